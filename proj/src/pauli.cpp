#include "sqc/pauli.hpp"

#include <sstream>

namespace sqc {

PauliOp PauliOp::x_op(size_t n_qubits, const std::vector<size_t>& support) {
  PauliOp p(n_qubits);
  p.x = BitVector::from_indices(n_qubits, support);
  return p;
}

PauliOp PauliOp::z_op(size_t n_qubits, const std::vector<size_t>& support) {
  PauliOp p(n_qubits);
  p.z = BitVector::from_indices(n_qubits, support);
  return p;
}

PauliOp& PauliOp::operator*=(const PauliOp& o) {
  x ^= o.x;
  z ^= o.z;
  return *this;
}

std::string PauliOp::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < n_qubits(); ++i) {
    bool xi = x.get(i), zi = z.get(i);
    if (!xi && !zi) continue;
    if (!first) os << ' ';
    first = false;
    os << (xi && zi ? 'Y' : xi ? 'X' : 'Z') << i;
  }
  if (first) os << 'I';
  return os.str();
}

}  // namespace sqc
