#pragma once

#include <string>
#include <vector>

#include "sqc/gf2.hpp"

namespace sqc {

// N-qubit Pauli operator up to phase, stored as X and Z support vectors.
struct PauliOp {
  BitVector x;
  BitVector z;

  PauliOp() = default;
  explicit PauliOp(size_t n_qubits) : x(n_qubits), z(n_qubits) {}

  static PauliOp x_op(size_t n_qubits, const std::vector<size_t>& support);
  static PauliOp z_op(size_t n_qubits, const std::vector<size_t>& support);

  size_t n_qubits() const { return x.size(); }
  size_t weight() const { return (x | z).weight(); }
  bool identity() const { return !x.any() && !z.any(); }
  bool is_x_type() const { return !z.any(); }
  bool is_z_type() const { return !x.any(); }

  PauliOp& operator*=(const PauliOp& o);  // product up to phase
  friend PauliOp operator*(PauliOp a, const PauliOp& b) {
    a *= b;
    return a;
  }
  bool operator==(const PauliOp&) const = default;

  // Symplectic product: 0 when the operators commute, 1 otherwise.
  bool symplectic(const PauliOp& o) const { return x.dot(o.z) ^ z.dot(o.x); }
  bool commutes(const PauliOp& o) const { return !symplectic(o); }

  std::string to_string() const;  // e.g. "X0 X1 Z4"
};

}  // namespace sqc
