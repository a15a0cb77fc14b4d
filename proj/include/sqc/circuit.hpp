#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqc/induced.hpp"
#include "sqc/rng.hpp"
#include "sqc/subsystem.hpp"

namespace sqc {

enum class Op : uint8_t { PrepZ, H, Cnot, MeasZ, MeasX };

struct Instruction {
  Op op;
  uint32_t a = 0;  // qubit (control for Cnot)
  uint32_t b = 0;  // Cnot target
};

struct Circuit {
  size_t n_qubits = 0;
  size_t n_data = 0;
  std::vector<Instruction> ops;
  size_t n_meas = 0;

  std::string to_text() const;  // one "OP q [q]" line per instruction
};

// One full sequential extraction round: every stabilizer generator gets its
// own ancilla (data qubits first, ancillas after), extracted one generator
// at a time, X-type generators before Z-type. X generators use an ancilla in
// |+> via H, CNOTs fanning ancilla -> data, and an X-basis measurement; Z
// generators fan data -> ancilla into a Z-basis measurement. CNOTs within a
// generator are grouped gauge operator by gauge operator: column by column
// for X generators, row by row for Z generators, so any ancilla fault spreads
// into a suffix that is gauge-equivalent to at most one effective error per
// classical decode.
struct ExtractionCircuit {
  Circuit round;
  size_t n_x_stabs = 0;  // measurement slots [0, n_x_stabs) are X generators
  size_t n_z_stabs = 0;
};

ExtractionCircuit build_extraction_circuit(const SubsystemCode& code);

// Circuit-level depolarizing noise: after every one-qubit gate X, Y or Z
// each with probability p/3; after every CNOT one of the fifteen nontrivial
// two-qubit Paulis each with probability p/15; every measurement outcome
// flips with probability p; one memory depolarizing event per data qubit
// before the protocol; destructive readout flips each data bit with
// probability p. Idle qubits are noiseless.
struct DepolarizingModel {
  double p = 1e-3;
};

// Pauli frame over the circuit's qubits.
struct Frame {
  BitVector x, z;
  explicit Frame(size_t n) : x(n), z(n) {}
};

// Syndrome -> minimum-weight correction table for a distance-3 code, one per
// error type. Weight-1 entries are exact; unknown syndromes fall back to a
// weight-2 entry when one exists, else identity.
class LookupDecoder {
 public:
  // stabs: the opposite-type stabilizer generators that see this error type
  LookupDecoder(const SubsystemCode& code, bool x_errors);

  BitVector decode(const BitVector& syndrome) const;
  BitVector syndrome_of(const BitVector& error_support) const;
  size_t syndrome_bits() const { return stab_supports_.size(); }

 private:
  uint64_t pack(const BitVector& syndrome) const;
  size_t n_ = 0;
  std::vector<BitVector> stab_supports_;
  std::map<uint64_t, BitVector> table_;
};

// Everything precomputed for protocol trials on one code.
struct ProtocolContext {
  const SubsystemCode* code = nullptr;
  ExtractionCircuit extraction;
  LookupDecoder lookup_x;  // corrects X errors from Z-generator outcomes
  LookupDecoder lookup_z;

  explicit ProtocolContext(const SubsystemCode& code);
};

// A single fault location: exactly one Pauli/flip planted in an otherwise
// noiseless protocol run.
struct FaultSite {
  enum class Where : uint8_t { Memory, Round1, Round2, Readout };
  Where where = Where::Memory;
  size_t index = 0;  // qubit for Memory/Readout, instruction for rounds
  uint8_t kind = 0;  // Pauli choice: 1..3 one-qubit, 1..15 two-qubit, 0 flip
};

struct TrialDiag {
  bool round2 = false;
  BitVector syndrome1, syndrome2;
};

// The state-preparation experiment: logical all-zeros state, one noisy
// extraction round; if any generator fired, a second noisy round whose
// syndrome alone feeds the lookup decoder; then destructive Z readout with
// per-bit flips, classical correction of the readout, and per-qubit logical
// flags from the corrected residual against the canonical Z logicals.
LogicalOutcome run_protocol_trial(const ProtocolContext& ctx, const DepolarizingModel& model,
                                  Rng& rng, TrialDiag* diag = nullptr);

// Same protocol with all noise off except the planted fault.
LogicalOutcome run_protocol_fault(const ProtocolContext& ctx, const FaultSite& fault,
                                  TrialDiag* diag = nullptr);

std::vector<FaultSite> enumerate_fault_sites(const ProtocolContext& ctx);

struct CircuitPoint {
  double p = 0;
  uint64_t trials = 0;
  uint64_t block_failures = 0;
  std::vector<uint64_t> qubit_failures;
  uint64_t seed = 0;

  double block_rate() const { return trials ? double(block_failures) / trials : 0.0; }
  double qubit_rate(size_t i) const { return trials ? double(qubit_failures[i]) / trials : 0.0; }
};

// Monte Carlo block/per-qubit failure rates over a grid of physical rates.
// Trial t of grid point i draws from stream i * trials + t of the seed, so
// results are deterministic for any worker count.
std::vector<CircuitPoint> circuit_sweep(const ProtocolContext& ctx,
                                        const std::vector<double>& p_grid, uint64_t trials,
                                        uint64_t seed, size_t jobs = 0);

struct Crossing {
  double estimate = 0;
  double lo = 0, hi = 0;  // bracketing grid points
};

// Pseudothreshold: the crossing of the interpolated failure curve with the
// failure rate of reference_qubits unencoded qubits, 1 - (1-p)^m, found by
// bisection on a log-log interpolation of the grid estimates. qubit = -1 uses
// the block rate (compare against m = n_logical for the break-even of the
// whole block), otherwise that logical qubit's rate (compare against m = 1).
// Returns nullopt when the curve never crosses inside the grid.
std::optional<Crossing> pseudothreshold(const std::vector<CircuitPoint>& points,
                                        int qubit = -1, size_t reference_qubits = 1);

}  // namespace sqc
