#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include <json.hpp>

#include "sqc/classical.hpp"
#include "sqc/constructions.hpp"
#include "sqc/manifest.hpp"
#include "sqc/subsystem.hpp"

using namespace sqc;

namespace {

std::vector<size_t> iota_set(std::initializer_list<size_t> xs) { return xs; }

bool ops_equal(const std::vector<PauliOp>& a, const std::vector<PauliOp>& b) {
  return a == b;
}

// Independent lower bound: no pure-type zero-syndrome operator of weight < w
// lies outside the gauge span.
bool no_light_dressed_logical(const SubsystemCode& code, size_t w) {
  RowSpace gx(code.x_support_matrix(code.gauge_x));
  RowSpace gz(code.z_support_matrix(code.gauge_z));
  auto check_type = [&](bool x_type) {
    const RowSpace& gauge = x_type ? gx : gz;
    const std::vector<PauliOp>& opposite = x_type ? code.stab_z : code.stab_x;
    std::vector<BitVector> stab_supports;
    for (const PauliOp& s : opposite)
      stab_supports.push_back(x_type ? s.z : s.x);
    size_t n = code.n_qubits;
    std::vector<size_t> idx;
    auto zero_syndrome = [&](const BitVector& e) {
      for (const BitVector& s : stab_supports)
        if (s.dot(e)) return false;
      return true;
    };
    for (size_t a = 0; a < n; ++a) {
      BitVector e1(n);
      e1.set(a, true);
      if (zero_syndrome(e1) && !gauge.contains(e1)) return false;
      if (w <= 2) continue;
      for (size_t b = a + 1; b < n; ++b) {
        BitVector e2 = e1;
        e2.set(b, true);
        if (zero_syndrome(e2) && !gauge.contains(e2)) return false;
      }
    }
    return true;
  };
  return check_type(true) && check_type(false);
}

}  // namespace

TEST_CASE("hamming pair with the canonical pairing gives the 21 qubit code") {
  ClassicalCode h7 = hamming_7_4();
  BbsCode bbs = build_bbs(h7, h7, hamming_bbs_q());
  const std::vector<std::string> expected_a = {"0010011", "0101010", "1000110", "0100101",
                                               "0011100", "1110000", "1001001"};
  CHECK(bbs.a == BinaryMatrix::from_strings(expected_a));
  CHECK(bbs.a == bbs.a.transposed());
  CHECK(bbs.symmetric);
  for (size_t i = 0; i < 7; ++i) {
    CHECK(bbs.a.row(i).weight() == 3);
    CHECK(bbs.a.transposed().row(i).weight() == 3);
  }
  CHECK(bbs.code.n_qubits == 21);
  CHECK(bbs.code.n_logical == 4);
  CHECK(bbs.code.stab_x.size() == 3);
  CHECK(bbs.code.stab_z.size() == 3);
  CHECK(bbs.code.gauge_x.size() == 14);  // sum over columns of (weight - 1)
  CHECK(bbs.code.gauge_z.size() == 14);
  CHECK(bbs.code.gauge_qubits() == 11);

  // row-major qubit numbering over the nonzero entries of a
  size_t q = 0;
  for (size_t i = 0; i < 7; ++i)
    for (size_t j = 0; j < 7; ++j) {
      if (bbs.a.get(i, j)) {
        REQUIRE(bbs.site_qubit[i][j] == int64_t(q));
        CHECK(bbs.code.layout[q] == QubitSite{Lattice::Single, uint32_t(i), uint32_t(j)});
        ++q;
      } else {
        CHECK(bbs.site_qubit[i][j] == -1);
      }
    }
  CHECK(q == 21);

  // frozen stabilizer supports, one generator per parity check row
  CHECK(bbs.code.stab_x[0].x.ones() == iota_set({0, 1, 2, 3, 4, 5, 9, 10, 11, 12, 13, 14}));
  CHECK(bbs.code.stab_x[1].x.ones() == iota_set({0, 1, 2, 6, 7, 8, 9, 10, 11, 15, 16, 17}));
  CHECK(bbs.code.stab_x[2].x.ones() == iota_set({3, 4, 5, 6, 7, 8, 9, 10, 11, 18, 19, 20}));
  CHECK(bbs.code.stab_z[0].z.ones() ==
        iota_set({3, 4, 6, 7, 9, 10, 13, 14, 15, 16, 18, 19}));
  CHECK(bbs.code.stab_z[1].z.ones() ==
        iota_set({0, 1, 4, 5, 6, 8, 12, 13, 15, 17, 18, 19}));
  CHECK(bbs.code.stab_z[2].z.ones() ==
        iota_set({0, 2, 3, 4, 9, 11, 12, 13, 16, 17, 19, 20}));

  // gauge generators: XX pairs within a column, ZZ pairs within a row
  for (const PauliOp& g : bbs.code.gauge_x) {
    CHECK(g.x.weight() == 2);
    CHECK_FALSE(g.z.any());
    auto ones = g.x.ones();
    CHECK(bbs.code.layout[ones[0]].col == bbs.code.layout[ones[1]].col);
  }
  for (const PauliOp& g : bbs.code.gauge_z) {
    CHECK(g.z.weight() == 2);
    auto ones = g.z.ones();
    CHECK(bbs.code.layout[ones[0]].row == bbs.code.layout[ones[1]].row);
  }

  // frozen canonical logicals
  CHECK(bbs.code.logical_x[0].x.ones() == iota_set({6, 7, 8}));
  CHECK(bbs.code.logical_x[1].x.ones() == iota_set({12, 13, 14}));
  CHECK(bbs.code.logical_x[2].x.ones() == iota_set({15, 16, 17}));
  CHECK(bbs.code.logical_x[3].x.ones() == iota_set({18, 19, 20}));
  CHECK(bbs.code.logical_z[0].z.ones() == iota_set({1, 5, 8}));
  CHECK(bbs.code.logical_z[1].z.ones() == iota_set({1, 5, 7, 8, 10, 14}));
  CHECK(bbs.code.logical_z[2].z.ones() == iota_set({3, 9, 16}));
  CHECK(bbs.code.logical_z[3].z.ones() == iota_set({2, 11, 20}));

  VerifyReport rep = verify_code(bbs.code);
  INFO(rep.summary());
  CHECK(rep.ok);
}

TEST_CASE("21 qubit code has distance 3 by two independent routes") {
  ClassicalCode h7 = hamming_7_4();
  BbsCode bbs = build_bbs(h7, h7, hamming_bbs_q());
  PauliOp witness;
  auto d = subsystem_distance_bruteforce(bbs.code, 34, &witness);
  REQUIRE(d.has_value());
  CHECK(*d == 3);
  CHECK(witness.weight() == 3);

  // route two: no dressed logical of weight <= 2, plus an explicit frozen
  // weight-3 witness (Z on qubits 4, 13, 19 = column 3 of the lattice)
  CHECK(no_light_dressed_logical(bbs.code, 3));
  BitVector wz = BitVector::from_indices(21, {4, 13, 19});
  for (const PauliOp& s : bbs.code.stab_x) CHECK_FALSE(s.x.dot(wz));
  CHECK_FALSE(RowSpace(bbs.code.z_support_matrix(bbs.code.gauge_z)).contains(wz));
  for (size_t j : {4u, 13u, 19u}) CHECK(bbs.code.layout[j].col == 3);
}

TEST_CASE("rep3 pair with identity pairing is the nine qubit square") {
  ClassicalCode r3 = repetition(3);
  BbsCode bbs = build_bbs(r3, r3, BinaryMatrix::identity(1));
  CHECK(bbs.code.n_qubits == 9);
  CHECK(bbs.code.n_logical == 1);
  CHECK(bbs.code.stab_x.size() == 2);
  CHECK(bbs.code.stab_z.size() == 2);
  for (const PauliOp& s : bbs.code.stab_x) CHECK(s.x.weight() == 6);
  for (const PauliOp& s : bbs.code.stab_z) CHECK(s.z.weight() == 6);
  CHECK(bbs.code.gauge_x.size() == 6);
  CHECK(bbs.code.gauge_qubits() == 4);
  CHECK(bbs.code.logical_x[0].weight() == 3);
  CHECK(bbs.code.logical_z[0].weight() == 3);
  CHECK(subsystem_distance_bruteforce(bbs.code) == 3);
  CHECK(verify_code(bbs.code).ok);

  // the subsystem product of rep3 with itself is the same code
  ShpCode shp = build_shp(r3.h);
  CHECK(shp.code.n_qubits == 9);
  CHECK(shp.code.n_logical == 1);
  CHECK(same_row_space(shp.code.x_support_matrix(shp.code.stab_x),
                       bbs.code.x_support_matrix(bbs.code.stab_x)));
  CHECK(same_row_space(shp.code.z_support_matrix(shp.code.stab_z),
                       bbs.code.z_support_matrix(bbs.code.stab_z)));
  CHECK(same_row_space(shp.code.x_support_matrix(shp.code.gauge_x),
                       bbs.code.x_support_matrix(bbs.code.gauge_x)));
  CHECK(same_row_space(shp.code.z_support_matrix(shp.code.gauge_z),
                       bbs.code.z_support_matrix(bbs.code.gauge_z)));
}

TEST_CASE("subsystem product of two hamming codes") {
  ClassicalCode h7 = hamming_7_4();
  ShpCode shp = build_shp(h7.h);
  CHECK(shp.n1 == 7);
  CHECK(shp.n2 == 7);
  CHECK(shp.code.n_qubits == 49);
  CHECK(shp.code.n_logical == 16);
  CHECK(shp.code.stab_x.size() == 12);  // k2 * m1
  CHECK(shp.code.stab_z.size() == 12);
  CHECK(shp.code.gauge_x.size() == 21);  // n2 * m1
  CHECK(shp.code.gauge_z.size() == 21);
  CHECK(shp.code.gauge_qubits() == 9);
  CHECK(verify_code(shp.code).ok);
  CHECK(subsystem_distance_bruteforce(shp.code) == 3);
  CHECK(no_light_dressed_logical(shp.code, 3));

  // stabilizer index grid: z stab (i, j) = (row i of c1.g) x (row j of h2)
  size_t m1 = shp.h1.rows(), m2 = shp.h2.rows();
  size_t k1 = shp.c1.g.rows(), k2 = shp.c2.g.rows();
  REQUIRE(shp.code.stab_z.size() == k1 * m2);
  for (size_t i = 0; i < k1; ++i)
    for (size_t j = 0; j < m2; ++j) {
      BitVector expect(49);
      for (size_t r = 0; r < shp.n1; ++r)
        for (size_t c = 0; c < shp.n2; ++c)
          if (shp.c1.g.get(i, r) && shp.h2.get(j, c)) expect.set(shp.qubit(r, c), true);
      CHECK(shp.code.stab_z[i * m2 + j].z == expect);
      CHECK_FALSE(shp.code.stab_z[i * m2 + j].x.any());
    }
  for (size_t i = 0; i < k2; ++i)
    for (size_t j = 0; j < m1; ++j) {
      BitVector expect(49);
      for (size_t r = 0; r < shp.n1; ++r)
        for (size_t c = 0; c < shp.n2; ++c)
          if (shp.h1.get(j, r) && shp.c2.g.get(i, c)) expect.set(shp.qubit(r, c), true);
      CHECK(shp.code.stab_x[i * m1 + j].x == expect);
    }

  // gauge: h1 rows down each column, h2 rows along each row
  std::set<std::vector<size_t>> gx;
  for (const PauliOp& g : shp.code.gauge_x) gx.insert(g.x.ones());
  for (size_t c = 0; c < shp.n2; ++c)
    for (size_t j = 0; j < m1; ++j) {
      std::vector<size_t> want;
      for (size_t r = 0; r < shp.n1; ++r)
        if (shp.h1.get(j, r)) want.push_back(shp.qubit(r, c));
      CHECK(gx.count(want) == 1);
    }
  std::set<std::vector<size_t>> gz;
  for (const PauliOp& g : shp.code.gauge_z) gz.insert(g.z.ones());
  for (size_t r = 0; r < shp.n1; ++r)
    for (size_t j = 0; j < m2; ++j) {
      std::vector<size_t> want;
      for (size_t c = 0; c < shp.n2; ++c)
        if (shp.h2.get(j, c)) want.push_back(shp.qubit(r, c));
      CHECK(gz.count(want) == 1);
    }
}

TEST_CASE("hypergraph product of rep3 is the thirteen qubit surface patch") {
  ClassicalCode r3 = repetition(3);
  HgpCode hgp = build_hgp(r3.h);
  CHECK(hgp.code.n_qubits == 13);
  CHECK(hgp.code.n_logical == 1);
  CHECK(hgp.code.stab_x.size() == 6);
  CHECK(hgp.code.stab_z.size() == 6);
  CHECK(hgp.code.gauge_qubits() == 0);
  CHECK(ops_equal(hgp.code.gauge_x, hgp.code.stab_x));
  CHECK(ops_equal(hgp.code.gauge_z, hgp.code.stab_z));
  CHECK(verify_code(hgp.code).ok);
  CHECK(subsystem_distance_bruteforce(hgp.code) == 3);
  // layout covers both grids
  CHECK(hgp.code.layout[hgp.large_qubit(1, 2)] == QubitSite{Lattice::Large, 1, 2});
  CHECK(hgp.code.layout[hgp.small_qubit(1, 1)] == QubitSite{Lattice::Small, 1, 1});
}

TEST_CASE("hypergraph product of two hamming codes") {
  ClassicalCode h7 = hamming_7_4();
  HgpCode hgp = build_hgp(h7.h);
  CHECK(hgp.code.n_qubits == 58);
  CHECK(hgp.code.n_logical == 16);
  CHECK(hgp.code.stab_x.size() == 21);
  CHECK(hgp.code.stab_z.size() == 21);
  CHECK(hgp.code.gauge_qubits() == 0);
  CHECK(verify_code(hgp.code).ok);
  CHECK(subsystem_distance_bruteforce(hgp.code) == 3);
}

TEST_CASE("gauge fixing holds for the worked pairs") {
  ClassicalCode h7 = hamming_7_4();
  GaugeFixReport rep = verify_gauge_fixing(h7.h, h7.h);
  INFO(rep.detail);
  CHECK(rep.ok);
  CHECK(rep.k_product == 16);
  CHECK(rep.k_hgp == 16);
  CHECK(rep.gauge_qubits_a == 9);
  CHECK(rep.gauge_qubits_b == 9);

  ClassicalCode r3 = repetition(3);
  GaugeFixReport rep2 = verify_gauge_fixing(r3.h, r3.h);
  INFO(rep2.detail);
  CHECK(rep2.ok);
  CHECK(rep2.k_product == 1);
  CHECK(rep2.k_hgp == 1);

  GaugeFixReport rep3x = verify_gauge_fixing(r3.h, h7.h);
  INFO(rep3x.detail);
  CHECK(rep3x.ok);
  CHECK(rep3x.k_product == rep3x.k_hgp);

  for (uint64_t seed : {4ull, 5ull}) {
    BinaryMatrix h1 = sample_biregular(6, 2, 3, seed).biadjacency();
    BinaryMatrix h2 = sample_biregular(8, 3, 4, seed + 10).biadjacency();
    GaugeFixReport r = verify_gauge_fixing(h1, h2);
    INFO(r.detail);
    CHECK(r.ok);
    CHECK(r.k_product == r.k_hgp);
  }
}

TEST_CASE("pairing search is deterministic and never beats the known best") {
  ClassicalCode h7 = hamming_7_4();
  QSearchResult a = minimize_qubits_q(h7, h7, 40, 9, true);
  QSearchResult b = minimize_qubits_q(h7, h7, 40, 9, true);
  CHECK(a.q == b.q);
  CHECK(a.qubit_count == b.qubit_count);
  CHECK(a.attempts == 40);
  CHECK(a.q.rank() == 4);
  // identity is attempt one, so the result can only improve on it
  BbsCode ident = build_bbs(h7, h7, BinaryMatrix::identity(4));
  CHECK(a.qubit_count <= ident.code.n_qubits);
  BbsCode best = build_bbs(h7, h7, a.q);
  CHECK(best.code.n_qubits == a.qubit_count);
  CHECK(best.a == best.a.transposed());
  // 21 is optimal for this pair; a long enough symmetric search finds it
  QSearchResult c = minimize_qubits_q(h7, h7, 400, 1, true);
  CHECK(c.qubit_count == 21);
}

TEST_CASE("construction inputs are validated") {
  ClassicalCode h7 = hamming_7_4();
  ClassicalCode r3 = repetition(3);
  CHECK_THROWS(build_bbs(h7, r3, BinaryMatrix::identity(4)));  // k mismatch
  CHECK_THROWS(build_bbs(h7, h7, BinaryMatrix::identity(3)));  // q dims
  BinaryMatrix singular(4, 4);
  CHECK_THROWS(build_bbs(h7, h7, singular));  // q rank
}

TEST_CASE("logical basis helpers") {
  BinaryMatrix outer = BinaryMatrix::identity(3);
  BinaryMatrix inner = BinaryMatrix::from_strings({"110"});
  BinaryMatrix reps = quotient_representatives(outer, inner);
  CHECK(reps.rows() == 2);
  BinaryMatrix all = BinaryMatrix::vstack(inner, reps);
  CHECK(all.rank() == 3);

  BinaryMatrix x_reps = BinaryMatrix::from_strings({"100", "010"});
  BinaryMatrix z_reps = BinaryMatrix::from_strings({"110", "010"});
  BinaryMatrix paired = pair_symplectic(x_reps, z_reps);
  CHECK(x_reps * paired.transposed() == BinaryMatrix::identity(2));
  CHECK(same_row_space(paired, z_reps));

  BinaryMatrix heavy = BinaryMatrix::from_strings({"111"});
  BinaryMatrix stab = BinaryMatrix::from_strings({"011"});
  BinaryMatrix light = reduce_weight_by_coset(heavy, stab);
  CHECK(light.row(0).ones() == std::vector<size_t>{0});
}

TEST_CASE("verify_code flags a broken logical") {
  BbsCode bbs = build_bbs(repetition(3), repetition(3), BinaryMatrix::identity(1));
  bbs.code.logical_x[0].x.flip(0);  // now anticommutes with a stabilizer
  VerifyReport rep = verify_code(bbs.code);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.issues.empty());
}

TEST_CASE("manifest round trips for all three kinds") {
  ClassicalCode h7 = hamming_7_4();
  ClassicalCode r3 = repetition(3);

  CodeBundle bbs;
  bbs.kind = "bbs";
  bbs.bbs = build_bbs(h7, h7, hamming_bbs_q());
  CodeBundle shp;
  shp.kind = "shp";
  shp.shp = build_shp(r3.h);
  CodeBundle hgp;
  hgp.kind = "hgp";
  hgp.hgp = build_hgp(r3.h);

  for (const CodeBundle* bundle : {&bbs, &shp, &hgp}) {
    std::string text = save_code_manifest(*bundle);
    CodeBundle loaded = load_code_manifest(text);
    CHECK(loaded.kind == bundle->kind);
    const SubsystemCode& a = bundle->code();
    const SubsystemCode& b = loaded.code();
    CHECK(a.n_qubits == b.n_qubits);
    CHECK(a.n_logical == b.n_logical);
    CHECK(a.layout == b.layout);
    CHECK(ops_equal(a.gauge_x, b.gauge_x));
    CHECK(ops_equal(a.gauge_z, b.gauge_z));
    CHECK(ops_equal(a.stab_x, b.stab_x));
    CHECK(ops_equal(a.stab_z, b.stab_z));
    CHECK(ops_equal(a.logical_x, b.logical_x));
    CHECK(ops_equal(a.logical_z, b.logical_z));
    // the stored block parses to the same code without a rebuild
    SubsystemCode parsed = parse_manifest_code(text);
    CHECK(parsed.n_qubits == a.n_qubits);
    CHECK(ops_equal(parsed.stab_x, a.stab_x));
    CHECK(ops_equal(parsed.logical_z, a.logical_z));
  }
}

TEST_CASE("tampered manifests are rejected") {
  CodeBundle bundle;
  bundle.kind = "bbs";
  bundle.bbs = build_bbs(hamming_7_4(), hamming_7_4(), hamming_bbs_q());
  std::string text = save_code_manifest(bundle);

  nlohmann::json j = nlohmann::json::parse(text);
  // move one qubit of one logical operator
  auto& support = j["derived"]["logical_x"][0];
  support[0] = (support[0].get<int>() + 1) % 21;
  CHECK_THROWS_AS(load_code_manifest(j.dump()), std::runtime_error);

  nlohmann::json v = nlohmann::json::parse(text);
  v["manifest_version"] = 99;
  CHECK_THROWS_AS(load_code_manifest(v.dump()), std::runtime_error);
}
