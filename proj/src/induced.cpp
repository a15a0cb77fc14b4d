#include "sqc/induced.hpp"

#include <stdexcept>

namespace sqc {

namespace {

BpConfig bp_config(const InducedConfig& cfg, bool with_meas) {
  BpConfig out;
  out.p_data = cfg.p_data;
  out.p_meas = with_meas ? cfg.p_meas : 0.0;
  out.max_iters = cfg.max_iters;
  return out;
}

// BP word, then exact linear solve when BP stalls (only consistent syndromes
// reach the fallback path, so the solve cannot fail).
BitVector decode_word(const BpDecoder& bp, const BinaryMatrix& h, const BitVector& syndrome,
                      bool solve_fallback, bool& converged) {
  BpResult r = bp.decode(syndrome);
  converged = converged && r.converged;
  if (r.converged || !solve_fallback) return r.data_correction;
  auto w = h.solve(syndrome);
  if (!w) throw std::runtime_error("syndrome outside the image of the check matrix");
  return *w;
}

}  // namespace

SyndromeFrame measure_syndrome(const SubsystemCode& code, const PauliOp& error) {
  SyndromeFrame s;
  s.x_syndrome = BitVector(code.stab_x.size());
  s.z_syndrome = BitVector(code.stab_z.size());
  for (size_t j = 0; j < code.stab_x.size(); ++j)
    s.x_syndrome.set(j, code.stab_x[j].x.dot(error.z));
  for (size_t j = 0; j < code.stab_z.size(); ++j)
    s.z_syndrome.set(j, code.stab_z[j].z.dot(error.x));
  return s;
}

LogicalOutcome classify_residual(const SubsystemCode& code, const PauliOp& residual) {
  SyndromeFrame s = measure_syndrome(code, residual);
  if (s.x_syndrome.any() || s.z_syndrome.any())
    throw std::invalid_argument("residual still triggers a stabilizer generator");
  LogicalOutcome out;
  out.x_flips = BitVector(code.n_logical);
  out.z_flips = BitVector(code.n_logical);
  for (size_t i = 0; i < code.n_logical; ++i) {
    out.x_flips.set(i, residual.x.dot(code.logical_z[i].z));
    out.z_flips.set(i, residual.z.dot(code.logical_x[i].x));
  }
  out.block_failure = out.x_flips.any() || out.z_flips.any();
  return out;
}

BbsDecoder::BbsDecoder(const BbsCode& code, const InducedConfig& cfg)
    : code_(&code),
      cfg_(cfg),
      bp_(TannerGraph(code.classical.h, cfg.p_meas > 0), bp_config(cfg, true)),
      bp_perfect_(TannerGraph(code.classical.h, false), bp_config(cfg, false)) {
  if (!code.symmetric)
    throw std::invalid_argument("decoder needs matching row and column checks");
  for (const auto& qs : code.row_qubits)
    if (qs.empty()) throw std::invalid_argument("matrix has an empty row");
  for (const auto& qs : code.col_qubits)
    if (qs.empty()) throw std::invalid_argument("matrix has an empty column");
}

BitVector BbsDecoder::column_parities(const BitVector& x_support) const {
  BitVector w(code_->a.cols());
  for (size_t q : x_support.ones()) w.flip(code_->code.layout[q].col);
  return w;
}

BitVector BbsDecoder::row_parities(const BitVector& z_support) const {
  BitVector w(code_->a.rows());
  for (size_t q : z_support.ones()) w.flip(code_->code.layout[q].row);
  return w;
}

SyndromeFrame BbsDecoder::syndrome_of(const BitVector& ex, const BitVector& ez) const {
  PauliOp e(code_->code.n_qubits);
  e.x = ex;
  e.z = ez;
  return measure_syndrome(code_->code, e);
}

CorrectionFrame BbsDecoder::decode_impl(const SyndromeFrame& s, const BpDecoder& bp,
                                        bool solve_fallback) const {
  const BinaryMatrix& h = code_->classical.h;
  CorrectionFrame out;
  out.x = BitVector(code_->code.n_qubits);
  out.z = BitVector(code_->code.n_qubits);
  BitVector w = decode_word(bp, h, s.z_syndrome, solve_fallback, out.converged_x);
  for (size_t j : w.ones()) out.x.set(code_->col_qubits[j][0], true);
  BitVector r = decode_word(bp, h, s.x_syndrome, solve_fallback, out.converged_z);
  for (size_t i : r.ones()) out.z.set(code_->row_qubits[i][0], true);
  return out;
}

CorrectionFrame BbsDecoder::decode_noisy(const SyndromeFrame& s) const {
  return decode_impl(s, bp_, false);
}

CorrectionFrame BbsDecoder::decode_perfect(const SyndromeFrame& s) const {
  return decode_impl(s, bp_perfect_, true);
}

ShpDecoder::ShpDecoder(const ShpCode& code, const InducedConfig& cfg)
    : code_(&code),
      cfg_(cfg),
      bp2_(TannerGraph(code.h2, cfg.p_meas > 0), bp_config(cfg, true)),
      bp2_perfect_(TannerGraph(code.h2, false), bp_config(cfg, false)),
      bp1_(TannerGraph(code.h1, cfg.p_meas > 0), bp_config(cfg, true)),
      bp1_perfect_(TannerGraph(code.h1, false), bp_config(cfg, false)) {}

SyndromeFrame ShpDecoder::syndrome_of(const BitVector& ex, const BitVector& ez) const {
  PauliOp e(code_->code.n_qubits);
  e.x = ex;
  e.z = ez;
  return measure_syndrome(code_->code, e);
}

CorrectionFrame ShpDecoder::decode_impl(const SyndromeFrame& s, const BpDecoder& bp2,
                                        const BpDecoder& bp1, bool solve_fallback) const {
  const ShpCode& c = *code_;
  size_t m1 = c.h1.rows(), m2 = c.h2.rows();
  size_t k1 = c.c1.k, k2 = c.c2.k;
  CorrectionFrame out;
  out.x = BitVector(c.code.n_qubits);
  out.z = BitVector(c.code.n_qubits);

  BitVector slice2(m2), slice1(m1);
  for (size_t i = 0; i < k1; ++i) {
    for (size_t j = 0; j < m2; ++j) slice2.set(j, s.z_syndrome.get(i * m2 + j));
    BitVector w = decode_word(bp2, c.h2, slice2, solve_fallback, out.converged_x);
    for (size_t j : w.ones()) out.x.set(c.qubit(c.pivots1[i], j), true);
  }
  for (size_t i = 0; i < k2; ++i) {
    for (size_t j = 0; j < m1; ++j) slice1.set(j, s.x_syndrome.get(i * m1 + j));
    BitVector v = decode_word(bp1, c.h1, slice1, solve_fallback, out.converged_z);
    for (size_t a : v.ones()) out.z.set(c.qubit(a, c.pivots2[i]), true);
  }
  return out;
}

CorrectionFrame ShpDecoder::decode_noisy(const SyndromeFrame& s) const {
  return decode_impl(s, bp2_, bp1_, false);
}

CorrectionFrame ShpDecoder::decode_perfect(const SyndromeFrame& s) const {
  return decode_impl(s, bp2_perfect_, bp1_perfect_, true);
}

}  // namespace sqc
