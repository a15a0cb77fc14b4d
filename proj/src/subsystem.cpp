#include "sqc/subsystem.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "sqc/rng.hpp"

namespace sqc {

BinaryMatrix SubsystemCode::x_support_matrix(const std::vector<PauliOp>& ops) const {
  BinaryMatrix m(ops.size(), n_qubits);
  for (size_t i = 0; i < ops.size(); ++i) m.set_row(i, ops[i].x);
  return m;
}

BinaryMatrix SubsystemCode::z_support_matrix(const std::vector<PauliOp>& ops) const {
  BinaryMatrix m(ops.size(), n_qubits);
  for (size_t i = 0; i < ops.size(); ++i) m.set_row(i, ops[i].z);
  return m;
}

size_t SubsystemCode::gauge_qubits() const {
  size_t rx = x_support_matrix(stab_x).rank();
  size_t rz = z_support_matrix(stab_z).rank();
  return n_qubits - rx - rz - n_logical;
}

std::string VerifyReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << issues.size() << " issue(s):";
  for (const auto& i : issues) os << "\n  " << i.what;
  return os.str();
}

namespace {

void check_commuting_sets(VerifyReport& rep, const std::vector<PauliOp>& a,
                          const std::vector<PauliOp>& b, const char* what, size_t limit) {
  size_t pairs = a.size() * b.size();
  if (pairs == 0) return;
  if (pairs <= limit) {
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        if (a[i].symplectic(b[j])) {
          rep.ok = false;
          rep.issues.push_back({std::string(what) + " anticommute at (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")"});
          return;
        }
  } else {
    Rng rng(0xc0de);
    for (size_t t = 0; t < limit; ++t) {
      size_t i = rng.uniform(a.size()), j = rng.uniform(b.size());
      if (a[i].symplectic(b[j])) {
        rep.ok = false;
        rep.issues.push_back({std::string(what) + " anticommute at sampled (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")"});
        return;
      }
    }
  }
}

}  // namespace

VerifyReport verify_code(const SubsystemCode& code, size_t exhaustive_limit) {
  VerifyReport rep;

  std::vector<PauliOp> stabs = code.stab_x;
  stabs.insert(stabs.end(), code.stab_z.begin(), code.stab_z.end());
  std::vector<PauliOp> gauge = code.gauge_x;
  gauge.insert(gauge.end(), code.gauge_z.begin(), code.gauge_z.end());
  std::vector<PauliOp> logicals = code.logical_x;
  logicals.insert(logicals.end(), code.logical_z.begin(), code.logical_z.end());

  check_commuting_sets(rep, stabs, stabs, "stabilizers", exhaustive_limit);
  check_commuting_sets(rep, stabs, gauge, "stabilizer/gauge", exhaustive_limit);
  check_commuting_sets(rep, stabs, logicals, "stabilizer/logical", exhaustive_limit);
  check_commuting_sets(rep, gauge, logicals, "gauge/logical", exhaustive_limit);

  if (code.logical_x.size() != code.n_logical || code.logical_z.size() != code.n_logical) {
    rep.ok = false;
    rep.issues.push_back({"logical operator count != k"});
  } else {
    for (size_t i = 0; i < code.n_logical; ++i)
      for (size_t j = 0; j < code.n_logical; ++j) {
        bool want = i == j;
        if (code.logical_x[i].symplectic(code.logical_z[j]) != want) {
          rep.ok = false;
          rep.issues.push_back({"logical pairing not symplectic at (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")"});
        }
      }
  }

  // qubit bookkeeping: n = k + rank(stab_x) + rank(stab_z) + gauge qubit count,
  // with the same gauge qubit count seen from either Pauli type
  size_t rsx = code.x_support_matrix(code.stab_x).rank();
  size_t rsz = code.z_support_matrix(code.stab_z).rank();
  size_t rgx = code.x_support_matrix(code.gauge_x).rank();
  size_t rgz = code.z_support_matrix(code.gauge_z).rank();
  if (rgx - rsx != rgz - rsz) {
    rep.ok = false;
    rep.issues.push_back({"gauge ranks disagree between X and Z sides"});
  }
  if (code.n_qubits != code.n_logical + rsx + rsz + (rgx - rsx)) {
    rep.ok = false;
    rep.issues.push_back({"n != k + rank(stab_x) + rank(stab_z) + gauge_qubits"});
  }

  // stabilizers must lie inside the gauge span, logicals outside it
  RowSpace gx(code.x_support_matrix(code.gauge_x));
  RowSpace gz(code.z_support_matrix(code.gauge_z));
  for (size_t i = 0; i < code.stab_x.size(); ++i)
    if (!gx.contains(code.stab_x[i].x)) {
      rep.ok = false;
      rep.issues.push_back({"stab_x[" + std::to_string(i) + "] outside gauge span"});
    }
  for (size_t i = 0; i < code.stab_z.size(); ++i)
    if (!gz.contains(code.stab_z[i].z)) {
      rep.ok = false;
      rep.issues.push_back({"stab_z[" + std::to_string(i) + "] outside gauge span"});
    }
  for (size_t i = 0; i < code.logical_x.size(); ++i)
    if (gx.contains(code.logical_x[i].x)) {
      rep.ok = false;
      rep.issues.push_back({"logical_x[" + std::to_string(i) + "] inside gauge span"});
    }
  for (size_t i = 0; i < code.logical_z.size(); ++i)
    if (gz.contains(code.logical_z[i].z)) {
      rep.ok = false;
      rep.issues.push_back({"logical_z[" + std::to_string(i) + "] inside gauge span"});
    }

  if (code.layout.size() != code.n_qubits) {
    rep.ok = false;
    rep.issues.push_back({"layout size != n_qubits"});
  }
  return rep;
}

BinaryMatrix quotient_representatives(const BinaryMatrix& outer, const BinaryMatrix& inner) {
  if (outer.cols() != inner.cols()) throw std::invalid_argument("column mismatch");
  RowSpace inner_space(inner);
  std::vector<BitVector> reps;
  // sweep outer rows, keeping those independent of inner + reps so far
  std::vector<BitVector> basis;
  std::vector<size_t> lead;
  auto reduce = [&](BitVector v) {
    for (size_t i = 0; i < basis.size(); ++i)
      if (v.get(lead[i])) v ^= basis[i];
    return v;
  };
  BinaryMatrix inner_r = inner.rref().m;
  for (size_t i = 0; i < inner_r.rows(); ++i) {
    if (!inner_r.row_any(i)) continue;
    BitVector v = reduce(inner_r.row(i));
    if (!v.any()) continue;
    lead.push_back(v.ones().front());
    basis.push_back(v);
  }
  for (size_t i = 0; i < outer.rows(); ++i) {
    BitVector v = reduce(outer.row(i));
    if (!v.any()) continue;
    lead.push_back(v.ones().front());
    basis.push_back(v);
    reps.push_back(outer.row(i));
  }
  return BinaryMatrix::from_row_vectors(reps, outer.cols());
}

BinaryMatrix pair_symplectic(const BinaryMatrix& x_reps, const BinaryMatrix& z_reps) {
  if (x_reps.rows() != z_reps.rows()) throw std::invalid_argument("rep count mismatch");
  size_t k = x_reps.rows();
  BinaryMatrix m(k, k);
  for (size_t i = 0; i < k; ++i) {
    BitVector xi = x_reps.row(i);
    for (size_t j = 0; j < k; ++j)
      if (xi.dot(z_reps.row(j))) m.set(i, j, true);
  }
  auto inv = m.inverse();
  if (!inv) throw std::runtime_error("logical pairing matrix is singular");
  // z'_j = sum_l inv[l][j] z_l makes x_i . z'_j = delta_ij
  return inv->transposed() * z_reps;
}

BinaryMatrix reduce_weight_by_coset(const BinaryMatrix& reps, const BinaryMatrix& stab,
                                    size_t max_rank) {
  BinaryMatrix basis = stab.rref().m;
  std::vector<BitVector> rows;
  for (size_t i = 0; i < basis.rows(); ++i)
    if (basis.row_any(i)) rows.push_back(basis.row(i));
  if (rows.size() > max_rank || reps.rows() == 0) return reps;

  BinaryMatrix out = reps;
  for (size_t r = 0; r < reps.rows(); ++r) {
    BitVector best = reps.row(r);
    BitVector cur = best;
    size_t best_w = best.weight();
    // Gray-code walk over the stabilizer span
    uint64_t prev = 0;
    for (uint64_t mask = 1; mask < (1ull << rows.size()); ++mask) {
      uint64_t gray = mask ^ (mask >> 1);
      uint64_t diff = gray ^ prev;
      prev = gray;
      cur ^= rows[std::countr_zero(diff)];
      size_t w = cur.weight();
      if (w < best_w) {
        best_w = w;
        best = cur;
      }
    }
    out.set_row(r, best);
  }
  return out;
}

}  // namespace sqc
