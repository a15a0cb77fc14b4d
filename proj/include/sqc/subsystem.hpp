#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqc/gf2.hpp"
#include "sqc/pauli.hpp"

namespace sqc {

enum class Lattice : uint8_t { Single, Large, Small };

struct QubitSite {
  Lattice lattice = Lattice::Single;
  uint32_t row = 0;
  uint32_t col = 0;
  bool operator==(const QubitSite&) const = default;
};

// CSS subsystem code. Stabilizer generators are kept one-to-one with the
// classical parity checks they come from, so a syndrome vector lines up with
// the checks a decoder feeds to BP and with the ancillas a circuit measures;
// the lists may therefore be redundant as generating sets. Logical operators
// form a symplectic basis: logical_x[i] anticommutes with logical_z[j] iff
// i == j, and both commute with the whole gauge group.
struct SubsystemCode {
  std::string name;
  size_t n_qubits = 0;
  size_t n_logical = 0;
  std::vector<QubitSite> layout;

  std::vector<PauliOp> gauge_x, gauge_z;
  std::vector<PauliOp> stab_x, stab_z;
  std::vector<PauliOp> logical_x, logical_z;

  size_t gauge_qubits() const;  // n - rank(stab_x) - rank(stab_z) - k

  BinaryMatrix x_support_matrix(const std::vector<PauliOp>& ops) const;
  BinaryMatrix z_support_matrix(const std::vector<PauliOp>& ops) const;
};

struct VerifyIssue {
  std::string what;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyIssue> issues;
  std::string summary() const;
};

// Structural checks: stabilizers commute with everything, logicals are bare
// and symplectically paired, and the qubit bookkeeping
// n = k + rank(stab_x) + rank(stab_z) + gauge_qubits holds. Pair-wise
// commutation checks run in full below `exhaustive_limit` qubits and on a
// deterministic sample above it.
VerifyReport verify_code(const SubsystemCode& code, size_t exhaustive_limit = 10000);

// Shared helpers for building canonical logical bases.
//
// Completes the row space of `inner` to the row space of `outer`: returns
// representatives of outer / inner, each a row of the result.
BinaryMatrix quotient_representatives(const BinaryMatrix& outer, const BinaryMatrix& inner);

// Adjusts z_reps so that x_reps[i] . z_reps[j] = delta_ij. The natural
// pairing matrix x_reps z_reps^T must be invertible.
BinaryMatrix pair_symplectic(const BinaryMatrix& x_reps, const BinaryMatrix& z_reps);

// Replaces each representative by the lightest member of its coset modulo
// the row space of `stab`, enumerating the coset when rank(stab) <= max_rank.
BinaryMatrix reduce_weight_by_coset(const BinaryMatrix& reps, const BinaryMatrix& stab,
                                    size_t max_rank = 16);

}  // namespace sqc
