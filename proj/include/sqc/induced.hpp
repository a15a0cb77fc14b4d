#pragma once

#include <cstdint>
#include <vector>

#include "sqc/bp.hpp"
#include "sqc/constructions.hpp"
#include "sqc/gf2.hpp"
#include "sqc/pauli.hpp"

namespace sqc {

// Measured stabilizer outcomes, one bit per stabilizer generator, in the
// generator order of the code's stab_x / stab_z lists. x_syndrome holds the
// X-type generator outcomes (sensitive to Z errors) and z_syndrome the
// Z-type ones (sensitive to X errors).
struct SyndromeFrame {
  BitVector x_syndrome;
  BitVector z_syndrome;
};

struct CorrectionFrame {
  BitVector x;  // X corrections per qubit
  BitVector z;
  bool converged_x = true;
  bool converged_z = true;
};

struct LogicalOutcome {
  BitVector x_flips;  // logical qubits hit by an X-type residual (Z readout flips)
  BitVector z_flips;
  bool block_failure = false;
};

// Decoder configuration shared by the induced decoders: priors for the
// underlying classical BP decodes.
struct InducedConfig {
  double p_data = 0.01;
  double p_meas = 0.0;  // 0 = perfect measurements, no measurement variables
  size_t max_iters = 60;
};

// Decoder-side view the simulation engines run against; implemented by
// BbsDecoder and ShpDecoder.
class SyndromeDecoder {
 public:
  virtual ~SyndromeDecoder() = default;
  virtual const SubsystemCode& code() const = 0;
  virtual SyndromeFrame syndrome_of(const BitVector& ex, const BitVector& ez) const = 0;
  // decode with measurement-error handling per config
  virtual CorrectionFrame decode_noisy(const SyndromeFrame& s) const = 0;
  // perfect-measurement decode; falls back to linear solving so that any
  // consistent syndrome always ends up cleared
  virtual CorrectionFrame decode_perfect(const SyndromeFrame& s) const = 0;
};

// Decoder for a BbsCode with matching row/column checks. Each error type
// reduces to one classical decode: the column parities of the X errors form a
// word whose parity-check syndrome is exactly the Z-generator outcomes (row
// parities of Z errors behave the same against the X generators). Corrections
// act on the lowest-index qubit of each flagged column (X) or row (Z).
class BbsDecoder final : public SyndromeDecoder {
 public:
  explicit BbsDecoder(const BbsCode& code, const InducedConfig& cfg = {});

  const SubsystemCode& code() const override { return code_->code; }
  SyndromeFrame syndrome_of(const BitVector& ex, const BitVector& ez) const override;
  CorrectionFrame decode_noisy(const SyndromeFrame& s) const override;
  CorrectionFrame decode_perfect(const SyndromeFrame& s) const override;

  // Column/row parity words of a Pauli support.
  BitVector column_parities(const BitVector& x_support) const;
  BitVector row_parities(const BitVector& z_support) const;

  const BbsCode& bbs() const { return *code_; }
  const InducedConfig& config() const { return cfg_; }

 private:
  CorrectionFrame decode_impl(const SyndromeFrame& s, const BpDecoder& bp,
                              bool solve_fallback) const;

  const BbsCode* code_;
  InducedConfig cfg_;
  BpDecoder bp_, bp_perfect_;
};

// Decoder for an ShpCode: k1 independent BP decodes against h2 recover X
// errors (one per generator row of c1.g, corrections on that row's pivot
// row of the grid), and k2 decodes against h1 recover Z errors on pivot
// columns.
class ShpDecoder final : public SyndromeDecoder {
 public:
  explicit ShpDecoder(const ShpCode& code, const InducedConfig& cfg = {});

  const SubsystemCode& code() const override { return code_->code; }
  SyndromeFrame syndrome_of(const BitVector& ex, const BitVector& ez) const override;
  CorrectionFrame decode_noisy(const SyndromeFrame& s) const override;
  CorrectionFrame decode_perfect(const SyndromeFrame& s) const override;

  const ShpCode& shp() const { return *code_; }
  const InducedConfig& config() const { return cfg_; }

 private:
  CorrectionFrame decode_impl(const SyndromeFrame& s, const BpDecoder& bp2,
                              const BpDecoder& bp1, bool solve_fallback) const;

  const ShpCode* code_;
  InducedConfig cfg_;
  BpDecoder bp2_, bp2_perfect_;  // checks h2, decodes X errors
  BpDecoder bp1_, bp1_perfect_;  // checks h1, decodes Z errors
};

// Syndrome of a Pauli error against the code's stabilizer generators.
SyndromeFrame measure_syndrome(const SubsystemCode& code, const PauliOp& error);

// Classifies a residual error with trivial stabilizer syndrome: logical
// qubit i is flipped iff the residual anticommutes with the opposite-type
// canonical logical i. Residuals inside the gauge-stabilizer group come out
// all-clear. Throws if the residual still triggers a stabilizer.
LogicalOutcome classify_residual(const SubsystemCode& code, const PauliOp& residual);

}  // namespace sqc
