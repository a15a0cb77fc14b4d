#include "sqc/constructions.hpp"

#include <algorithm>
#include <stdexcept>

#include "sqc/rng.hpp"

namespace sqc {

namespace {

// Canonical logical basis from quotient representatives: adjust the Z side so
// the pairing is delta_ij, then take the lightest coset member of every
// representative (bounded by the enumerable stabilizer rank).
void attach_logicals(SubsystemCode& code, const BinaryMatrix& x_reps,
                     const BinaryMatrix& z_reps) {
  BinaryMatrix z_paired = pair_symplectic(x_reps, z_reps);
  BinaryMatrix x_fin = reduce_weight_by_coset(x_reps, code.x_support_matrix(code.stab_x));
  BinaryMatrix z_fin = reduce_weight_by_coset(z_paired, code.z_support_matrix(code.stab_z));
  code.logical_x.clear();
  code.logical_z.clear();
  for (size_t i = 0; i < x_fin.rows(); ++i) {
    PauliOp px(code.n_qubits), pz(code.n_qubits);
    px.x = x_fin.row(i);
    pz.z = z_fin.row(i);
    code.logical_x.push_back(px);
    code.logical_z.push_back(pz);
  }
  code.n_logical = x_fin.rows();
}

std::vector<size_t> free_columns(const BinaryMatrix::Rref& rr, size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free.push_back(j);
  return free;
}

}  // namespace

BbsCode build_bbs(const ClassicalCode& c1, const ClassicalCode& c2, const BinaryMatrix& q) {
  if (c1.k != c2.k) throw std::invalid_argument("codes must encode the same number of bits");
  if (q.rows() != c1.k || q.cols() != c1.k) throw std::invalid_argument("q must be k x k");
  if (q.rank() != c1.k) throw std::invalid_argument("q must have full rank");
  if (c1.g.rows() != c1.k || c2.g.rows() != c2.k)
    throw std::invalid_argument("generator matrices must have k rows");

  BbsCode out;
  out.a = c1.g.transposed() * q * c2.g;
  const BinaryMatrix& a = out.a;
  size_t n1 = a.rows(), n2 = a.cols();

  SubsystemCode& code = out.code;
  code.name = "bbs_" + c1.name + "_" + c2.name;

  out.site_qubit.assign(n1, std::vector<int64_t>(n2, -1));
  out.row_qubits.assign(n1, {});
  out.col_qubits.assign(n2, {});
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j)
      if (a.get(i, j)) {
        uint32_t qid = static_cast<uint32_t>(code.layout.size());
        out.site_qubit[i][j] = qid;
        out.row_qubits[i].push_back(qid);
        out.col_qubits[j].push_back(qid);
        code.layout.push_back({Lattice::Single, static_cast<uint32_t>(i),
                               static_cast<uint32_t>(j)});
      }
  code.n_qubits = code.layout.size();
  size_t n = code.n_qubits;

  // gauge: XX between consecutive qubits of a column, ZZ along rows
  for (size_t j = 0; j < n2; ++j)
    for (size_t t = 0; t + 1 < out.col_qubits[j].size(); ++t)
      code.gauge_x.push_back(
          PauliOp::x_op(n, {out.col_qubits[j][t], out.col_qubits[j][t + 1]}));
  for (size_t i = 0; i < n1; ++i)
    for (size_t t = 0; t + 1 < out.row_qubits[i].size(); ++t)
      code.gauge_z.push_back(
          PauliOp::z_op(n, {out.row_qubits[i][t], out.row_qubits[i][t + 1]}));

  // stabilizers, one per classical parity check: X on the rows h selects,
  // Z on the columns
  auto row_set_support = [&](const BitVector& rows_sel) {
    BitVector v(n);
    for (size_t i : rows_sel.ones())
      for (uint32_t qid : out.row_qubits[i]) v.set(qid, true);
    return v;
  };
  auto col_set_support = [&](const BitVector& cols_sel) {
    BitVector v(n);
    for (size_t j : cols_sel.ones())
      for (uint32_t qid : out.col_qubits[j]) v.set(qid, true);
    return v;
  };
  for (size_t r = 0; r < c1.h.rows(); ++r) {
    PauliOp p(n);
    p.x = row_set_support(c1.h.row(r));
    code.stab_x.push_back(p);
  }
  for (size_t r = 0; r < c2.h.rows(); ++r) {
    PauliOp p(n);
    p.z = col_set_support(c2.h.row(r));
    code.stab_z.push_back(p);
  }

  // logical classes: whole rows of a modulo row(h1) row-sets (X side), whole
  // columns modulo row(h2) column-sets (Z side)
  auto rr1 = c1.h.rref();
  auto rr2 = c2.h.rref();
  std::vector<size_t> free1 = free_columns(rr1, n1);
  std::vector<size_t> free2 = free_columns(rr2, n2);
  if (free1.size() != c1.k || free2.size() != c2.k)
    throw std::invalid_argument("parity check rank inconsistent with k");
  BinaryMatrix x_reps(c1.k, n), z_reps(c2.k, n);
  for (size_t t = 0; t < free1.size(); ++t) {
    BitVector sel(n1);
    sel.set(free1[t], true);
    x_reps.set_row(t, row_set_support(sel));
  }
  for (size_t t = 0; t < free2.size(); ++t) {
    BitVector sel(n2);
    sel.set(free2[t], true);
    z_reps.set_row(t, col_set_support(sel));
  }
  attach_logicals(code, x_reps, z_reps);

  out.q = q;
  out.classical = c1;
  out.classical2 = c2;
  out.symmetric = c1.h == c2.h && a == a.transposed();
  return out;
}

BinaryMatrix hamming_bbs_q() {
  return BinaryMatrix::from_strings({"0010", "0101", "1000", "0100"});
}

ShpCode build_shp(const BinaryMatrix& h1, const BinaryMatrix& h2) {
  if (h1.cols() == 0 || h2.cols() == 0) throw std::invalid_argument("empty parity check");
  ShpCode out;
  out.h1 = h1;
  out.h2 = h2;
  out.n1 = h1.cols();
  out.n2 = h2.cols();

  auto make_code = [](const BinaryMatrix& h, const char* nm) {
    ClassicalCode c;
    c.h = h;
    c.g = h.kernel_basis().rref().m;
    c.n = h.cols();
    c.k = c.g.rows();
    c.name = nm;
    return c;
  };
  out.c1 = make_code(h1, "kernel_h1");
  out.c2 = make_code(h2, "kernel_h2");
  out.pivots1 = out.c1.g.rref().pivots;
  out.pivots2 = out.c2.g.rref().pivots;

  size_t n1 = out.n1, n2 = out.n2;
  size_t m1 = h1.rows(), m2 = h2.rows();
  size_t k1 = out.c1.k, k2 = out.c2.k;
  size_t n = n1 * n2;

  SubsystemCode& code = out.code;
  code.name = "shp";
  code.n_qubits = n;
  code.layout.reserve(n);
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j)
      code.layout.push_back({Lattice::Single, static_cast<uint32_t>(i),
                             static_cast<uint32_t>(j)});

  // gauge: each row of h1 dropped into every column (X), each row of h2 into
  // every row (Z)
  for (size_t r = 0; r < m1; ++r) {
    BitVector hr = h1.row(r);
    for (size_t j = 0; j < n2; ++j) {
      BitVector v(n);
      for (size_t i : hr.ones()) v.set(out.qubit(i, j), true);
      PauliOp p(n);
      p.x = v;
      code.gauge_x.push_back(p);
    }
  }
  for (size_t i = 0; i < n1; ++i)
    for (size_t r = 0; r < m2; ++r) {
      BitVector hr = h2.row(r);
      BitVector v(n);
      for (size_t j : hr.ones()) v.set(out.qubit(i, j), true);
      PauliOp p(n);
      p.z = v;
      code.gauge_z.push_back(p);
    }

  // stabilizers: (row i of c2.g) x (row j of h1) gives X generators grouped
  // by i; (row i of c1.g) x (row j of h2) gives Z generators grouped by i
  for (size_t i = 0; i < k2; ++i) {
    BitVector gi = out.c2.g.row(i);
    for (size_t j = 0; j < m1; ++j) {
      BitVector hj = h1.row(j);
      BitVector v(n);
      for (size_t a : hj.ones())
        for (size_t b : gi.ones()) v.set(out.qubit(a, b), true);
      PauliOp p(n);
      p.x = v;
      code.stab_x.push_back(p);
    }
  }
  for (size_t i = 0; i < k1; ++i) {
    BitVector gi = out.c1.g.row(i);
    for (size_t j = 0; j < m2; ++j) {
      BitVector hj = h2.row(j);
      BitVector v(n);
      for (size_t a : gi.ones())
        for (size_t b : hj.ones()) v.set(out.qubit(a, b), true);
      PauliOp p(n);
      p.z = v;
      code.stab_z.push_back(p);
    }
  }

  // logical classes: e_f x (codeword of c2) for f over the free columns of
  // h1 (X side), (codeword of c1) x e_f for f over free columns of h2
  auto rr1 = h1.rref();
  auto rr2 = h2.rref();
  std::vector<size_t> free1 = free_columns(rr1, n1);
  std::vector<size_t> free2 = free_columns(rr2, n2);
  BinaryMatrix x_reps(k1 * k2, n), z_reps(k1 * k2, n);
  {
    size_t t = 0;
    for (size_t f : free1)
      for (size_t gi = 0; gi < k2; ++gi) {
        BitVector v(n);
        for (size_t b : out.c2.g.row(gi).ones()) v.set(out.qubit(f, b), true);
        x_reps.set_row(t++, v);
      }
    t = 0;
    for (size_t gi = 0; gi < k1; ++gi)
      for (size_t f : free2) {
        BitVector v(n);
        for (size_t a : out.c1.g.row(gi).ones()) v.set(out.qubit(a, f), true);
        z_reps.set_row(t++, v);
      }
  }
  attach_logicals(code, x_reps, z_reps);
  return out;
}

HgpCode build_hgp(const BinaryMatrix& h1, const BinaryMatrix& h2) {
  if (h1.cols() == 0 || h2.cols() == 0) throw std::invalid_argument("empty parity check");
  HgpCode out;
  out.h1 = h1;
  out.h2 = h2;
  out.n1 = h1.cols();
  out.n2 = h2.cols();
  out.m1 = h1.rows();
  out.m2 = h2.rows();
  size_t n1 = out.n1, n2 = out.n2, m1 = out.m1, m2 = out.m2;
  size_t n = n1 * n2 + m1 * m2;

  SubsystemCode& code = out.code;
  code.name = "hgp";
  code.n_qubits = n;
  code.layout.reserve(n);
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j)
      code.layout.push_back({Lattice::Large, static_cast<uint32_t>(i),
                             static_cast<uint32_t>(j)});
  for (size_t a = 0; a < m1; ++a)
    for (size_t b = 0; b < m2; ++b)
      code.layout.push_back({Lattice::Small, static_cast<uint32_t>(a),
                             static_cast<uint32_t>(b)});

  // X check (a, j): row a of h1 down large column j, plus small row a at the
  // columns where h2 hits bit j. Z check (i, b): row b of h2 along large row
  // i, plus small column b at the rows where h1 hits bit i.
  for (size_t a = 0; a < m1; ++a)
    for (size_t j = 0; j < n2; ++j) {
      BitVector v(n);
      for (size_t i : h1.row(a).ones()) v.set(out.large_qubit(i, j), true);
      for (size_t b = 0; b < m2; ++b)
        if (h2.get(b, j)) v.set(out.small_qubit(a, b), true);
      PauliOp p(n);
      p.x = v;
      code.stab_x.push_back(p);
    }
  for (size_t i = 0; i < n1; ++i)
    for (size_t b = 0; b < m2; ++b) {
      BitVector v(n);
      for (size_t j : h2.row(b).ones()) v.set(out.large_qubit(i, j), true);
      for (size_t a = 0; a < m1; ++a)
        if (h1.get(a, i)) v.set(out.small_qubit(a, b), true);
      PauliOp p(n);
      p.z = v;
      code.stab_z.push_back(p);
    }
  code.gauge_x = code.stab_x;
  code.gauge_z = code.stab_z;

  // logicals from the kernel quotients of both directions
  BinaryMatrix sx = code.x_support_matrix(code.stab_x);
  BinaryMatrix sz = code.z_support_matrix(code.stab_z);
  BinaryMatrix x_space = sz.kernel_basis();
  BinaryMatrix z_space = sx.kernel_basis();
  BinaryMatrix x_reps = quotient_representatives(x_space, sx);
  BinaryMatrix z_reps = quotient_representatives(z_space, sz);
  attach_logicals(code, x_reps, z_reps);
  return out;
}

QSearchResult minimize_qubits_q(const ClassicalCode& c1, const ClassicalCode& c2,
                                size_t attempts, uint64_t seed, bool symmetric_only) {
  if (attempts == 0) throw std::invalid_argument("need at least one attempt");
  if (c1.k != c2.k) throw std::invalid_argument("codes must encode the same number of bits");
  size_t k = c1.k;
  BinaryMatrix g1t = c1.g.transposed();

  auto weight_of = [&](const BinaryMatrix& q, BinaryMatrix& a_out) {
    a_out = g1t * q * c2.g;
    size_t w = 0;
    for (size_t i = 0; i < a_out.rows(); ++i) w += a_out.row(i).weight();
    return w;
  };
  auto lex_less = [](const BinaryMatrix& a, const BinaryMatrix& b) {
    for (size_t i = 0; i < a.rows(); ++i) {
      std::string ra = a.row(i).to_string(), rb = b.row(i).to_string();
      if (ra != rb) return ra < rb;
    }
    return false;
  };

  QSearchResult best;
  best.q = BinaryMatrix::identity(k);
  BinaryMatrix best_a;
  best.qubit_count = weight_of(best.q, best_a);
  best.attempts = attempts;

  Rng rng(seed);
  auto random_full_rank = [&]() {
    while (true) {
      BinaryMatrix q(k, k);
      if (symmetric_only) {
        for (size_t i = 0; i < k; ++i)
          for (size_t j = i; j < k; ++j) {
            bool bit = rng.next_u64() & 1;
            q.set(i, j, bit);
            q.set(j, i, bit);
          }
      } else {
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) q.set(i, j, rng.next_u64() & 1);
      }
      if (q.rank() == k) return q;
    }
  };

  for (size_t t = 1; t < attempts; ++t) {
    BinaryMatrix q = random_full_rank();
    BinaryMatrix a;
    size_t w = weight_of(q, a);
    if (w < best.qubit_count ||
        (w == best.qubit_count && lex_less(a, best_a))) {
      best.qubit_count = w;
      best.q = q;
      best_a = a;
    }
  }
  return best;
}

std::optional<size_t> subsystem_distance_bruteforce(const SubsystemCode& code, size_t cap,
                                                    PauliOp* witness) {
  size_t n = code.n_qubits;

  struct Search {
    std::optional<BitVector> v;
    size_t explored = 0;  // all weights <= explored fully enumerated, no hit
  };

  // per Pauli type: lightest vector commuting with the opposite stabilizers
  // but outside the same-type gauge span
  auto search_type = [&](const BinaryMatrix& opp_stab, const BinaryMatrix& gauge,
                         size_t weight_ub) -> Search {
    RowSpace gauge_space(gauge);
    // per-qubit syndrome signatures
    BinaryMatrix cols = opp_stab.transposed();  // n x m
    double budget = std::pow(2.0, double(cap));
    double enumerated = 0;
    std::vector<size_t> idx;
    for (size_t w = 1; w <= weight_ub; ++w) {
      // candidate count at this weight
      double cnt = 1;
      for (size_t t = 0; t < w; ++t) cnt *= double(n - t) / double(t + 1);
      enumerated += cnt;
      if (enumerated > budget) return {std::nullopt, w - 1};

      idx.assign(w, 0);
      for (size_t t = 0; t < w; ++t) idx[t] = t;
      std::vector<BitVector> synd(w + 1, BitVector(opp_stab.rows()));
      while (true) {
        // incremental syndromes: synd[t+1] = synd[t] ^ signature(idx[t])
        for (size_t t = 0; t < w; ++t) {
          synd[t + 1] = synd[t];
          synd[t + 1] ^= cols.row(idx[t]);
        }
        if (!synd[w].any()) {
          BitVector v(n);
          for (size_t t = 0; t < w; ++t) v.set(idx[t], true);
          if (!gauge_space.contains(v)) return {v, w - 1};
        }
        // next combination
        size_t t = w;
        bool advanced = false;
        while (t-- > 0) {
          if (idx[t] + (w - t) < n) {
            ++idx[t];
            for (size_t u = t + 1; u < w; ++u) idx[u] = idx[u - 1] + 1;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;  // weight class exhausted, move to w + 1
      }
    }
    return {std::nullopt, weight_ub};
  };

  size_t ub_x = n + 1, ub_z = n + 1;
  for (const auto& l : code.logical_x) ub_x = std::min(ub_x, l.weight());
  for (const auto& l : code.logical_z) ub_z = std::min(ub_z, l.weight());
  if (ub_x > n || ub_z > n) return std::nullopt;

  BinaryMatrix sx = code.x_support_matrix(code.stab_x);
  BinaryMatrix sz = code.z_support_matrix(code.stab_z);
  BinaryMatrix gx = code.x_support_matrix(code.gauge_x);
  BinaryMatrix gz = code.z_support_matrix(code.gauge_z);

  auto rx = search_type(sz, gx, ub_x);
  size_t dx = rx.v ? rx.v->weight() : ub_x;
  auto rz = search_type(sx, gz, std::min(ub_z, dx));
  size_t dz = rz.v ? rz.v->weight() : ub_z;

  size_t d = std::min(dx, dz);
  // the logical weights are attained upper bounds, so d is exact as long as
  // both searches fully enumerated every weight below it; a budget abort that
  // leaves lighter candidates unexplored makes the claim unsound
  size_t floor_x = rx.v ? dx : rx.explored + 1;
  size_t floor_z = rz.v ? dz : rz.explored + 1;
  if (std::min(floor_x, floor_z) < d) return std::nullopt;

  if (witness) {
    PauliOp p(n);
    if (rz.v && dz <= dx)
      p.z = *rz.v;
    else if (rx.v)
      p.x = *rx.v;
    witness->x = p.x;
    witness->z = p.z;
  }
  return d;
}

namespace {

// embeds an operator support living on `src` qubits into a combined register
BitVector embed(const BitVector& v, size_t offset, size_t total,
                const std::vector<size_t>* remap = nullptr) {
  BitVector out(total);
  for (size_t i : v.ones()) out.set(offset + (remap ? (*remap)[i] : i), true);
  return out;
}

}  // namespace

GaugeFixReport verify_gauge_fixing(const BinaryMatrix& h1, const BinaryMatrix& h2) {
  GaugeFixReport rep;
  ShpCode a = build_shp(h1, h2);
  ShpCode b = build_shp(h2.transposed(), h1.transposed());
  HgpCode hgp = build_hgp(h1, h2);

  size_t n_large = a.code.n_qubits;           // n1 * n2
  size_t n_total = hgp.code.n_qubits;
  if (n_large + b.code.n_qubits != n_total) {
    rep.detail = "qubit counts disagree";
    return rep;
  }

  // block b's (i, j) site (i < m2, j < m1) sits at the hgp small-grid (j, i)
  std::vector<size_t> remap_b(b.code.n_qubits);
  for (size_t i = 0; i < b.n1; ++i)
    for (size_t j = 0; j < b.n2; ++j) remap_b[b.qubit(i, j)] = j * b.n1 + i;

  auto embed_list = [&](const std::vector<PauliOp>& ops, bool x_side, size_t offset,
                        const std::vector<size_t>* remap) {
    std::vector<BitVector> rows;
    for (const auto& op : ops) rows.push_back(embed(x_side ? op.x : op.z, offset, n_total, remap));
    return BinaryMatrix::from_row_vectors(rows, n_total);
  };

  BinaryMatrix q_stab_x = BinaryMatrix::vstack(embed_list(a.code.stab_x, true, 0, nullptr),
                                               embed_list(b.code.stab_x, true, n_large, &remap_b));
  BinaryMatrix q_stab_z = BinaryMatrix::vstack(embed_list(a.code.stab_z, false, 0, nullptr),
                                               embed_list(b.code.stab_z, false, n_large, &remap_b));
  BinaryMatrix q_gauge_x = BinaryMatrix::vstack(embed_list(a.code.gauge_x, true, 0, nullptr),
                                                embed_list(b.code.gauge_x, true, n_large, &remap_b));
  BinaryMatrix q_gauge_z = BinaryMatrix::vstack(embed_list(a.code.gauge_z, false, 0, nullptr),
                                                embed_list(b.code.gauge_z, false, n_large, &remap_b));
  BinaryMatrix h_stab_x = hgp.code.x_support_matrix(hgp.code.stab_x);
  BinaryMatrix h_stab_z = hgp.code.z_support_matrix(hgp.code.stab_z);

  auto contained = [](const BinaryMatrix& inner, const BinaryMatrix& outer, const char* what,
                      std::string& detail) {
    RowSpace space(outer);
    for (size_t i = 0; i < inner.rows(); ++i)
      if (!space.contains(inner.row(i))) {
        detail = std::string(what) + ": row " + std::to_string(i) + " not contained";
        return false;
      }
    return true;
  };

  rep.k_product = a.code.n_logical + b.code.n_logical;
  rep.k_hgp = hgp.code.n_logical;
  rep.gauge_qubits_a = a.code.gauge_qubits();
  rep.gauge_qubits_b = b.code.gauge_qubits();

  rep.ok = contained(q_stab_x, h_stab_x, "product stab_x in hgp stab_x", rep.detail) &&
           contained(q_stab_z, h_stab_z, "product stab_z in hgp stab_z", rep.detail) &&
           contained(h_stab_x, q_gauge_x, "hgp stab_x in product gauge_x", rep.detail) &&
           contained(h_stab_z, q_gauge_z, "hgp stab_z in product gauge_z", rep.detail) &&
           rep.k_product == rep.k_hgp;
  if (rep.ok)
    rep.detail = "ok";
  else if (rep.detail.empty())
    rep.detail = "logical counts disagree";
  return rep;
}

}  // namespace sqc
