#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqc/classical.hpp"
#include "sqc/gf2.hpp"
#include "sqc/pauli.hpp"
#include "sqc/subsystem.hpp"

namespace sqc {

// Code built from a binary matrix a: one qubit per nonzero entry of a,
// indexed row-major; XX gauge generators between vertically adjacent qubits,
// ZZ between horizontally adjacent ones. Stabilizers select whole row sets
// (X) or column sets (Z) through the parity checks of the classical code
// row(a) = col(a). Carries everything the induced decoder needs.
struct BbsCode {
  SubsystemCode code;
  BinaryMatrix a;
  BinaryMatrix q;            // construction input: a = g1^T q g2
  ClassicalCode classical;   // code 1; h used for decoding; row space = row(a)
  ClassicalCode classical2;  // code 2
  bool symmetric = false;    // equal checks and a == a^T, required by the induced decoder

  // site <-> qubit maps (a has n rows/cols; -1 where a is zero)
  std::vector<std::vector<int64_t>> site_qubit;
  std::vector<std::vector<uint32_t>> row_qubits;  // qubits of each row, ascending
  std::vector<std::vector<uint32_t>> col_qubits;  // qubits of each column, ascending
};

// Subsystem hypergraph product of two parity check matrices, qubits on the
// n1 x n2 grid. Gauge: rows of h1 placed column-wise and rows of h2 placed
// row-wise. Stabilizers: (generator of code 1) x (check of code 2) and
// vice versa, grouped so each group feeds one classical BP decode.
struct ShpCode {
  SubsystemCode code;
  BinaryMatrix h1, h2;
  ClassicalCode c1, c2;            // g in reduced form, kernel of h1 / h2
  std::vector<size_t> pivots1, pivots2;  // pivot columns of c1.g / c2.g
  size_t n1 = 0, n2 = 0;

  size_t qubit(size_t i, size_t j) const { return i * n2 + j; }
  // stab_z is ordered (i, j) -> i * m2 + j over i < k1 generator rows of c1.g
  // and j < m2 rows of h2; stab_x is (i, j) -> i * m1 + j over i < k2, j < m1.
};

// Hypergraph product stabilizer code of h1 (m1 x n1) and h2 (m2 x n2):
// qubits on the large n1 x n2 grid followed by the small m1 x m2 grid.
struct HgpCode {
  SubsystemCode code;
  BinaryMatrix h1, h2;
  size_t n1 = 0, n2 = 0, m1 = 0, m2 = 0;

  size_t large_qubit(size_t i, size_t j) const { return i * n2 + j; }
  size_t small_qubit(size_t a, size_t b) const { return n1 * n2 + a * m2 + b; }
};

// a = g1^T q g2 for generator matrices g1, g2 of two codes with equal k and
// full-rank q. Throws if the dimensions or ranks are off.
BbsCode build_bbs(const ClassicalCode& c1, const ClassicalCode& c2, const BinaryMatrix& q);

// The symmetric 4 x 4 pairing matrix that turns two [7,4] Hamming codes into
// the 21-qubit code with a == a^T and every row and column of weight 3.
BinaryMatrix hamming_bbs_q();

ShpCode build_shp(const BinaryMatrix& h1, const BinaryMatrix& h2);
inline ShpCode build_shp(const BinaryMatrix& h) { return build_shp(h, h); }

HgpCode build_hgp(const BinaryMatrix& h1, const BinaryMatrix& h2);
inline HgpCode build_hgp(const BinaryMatrix& h) { return build_hgp(h, h); }

struct QSearchResult {
  BinaryMatrix q;
  size_t qubit_count = 0;
  size_t attempts = 0;
};

// Searches full-rank k x k matrices q minimizing |g1^T q g2|. Attempt 1 is
// the identity; later attempts are random full-rank draws (symmetric draws
// when symmetric_only). Ties break toward the smaller qubit count first,
// then the lexicographically smaller matrix a.
QSearchResult minimize_qubits_q(const ClassicalCode& c1, const ClassicalCode& c2,
                                size_t attempts, uint64_t seed, bool symmetric_only = false);

// Exact minimum weight of a dressed logical operator (an operator commuting
// with every stabilizer but outside the gauge group), found by increasing-
// weight enumeration per Pauli type. Returns nullopt if the candidate count
// before the known upper bound exceeds 2^cap. witness receives a minimum
// weight dressed logical when the search succeeds.
std::optional<size_t> subsystem_distance_bruteforce(const SubsystemCode& code, size_t cap = 34,
                                                    PauliOp* witness = nullptr);

struct GaugeFixReport {
  bool ok = false;
  size_t k_product = 0;  // logical qubits of the two-block subsystem product
  size_t k_hgp = 0;
  size_t gauge_qubits_a = 0;  // gauge qubits of each subsystem block
  size_t gauge_qubits_b = 0;
  std::string detail;  // human-readable witness when a containment fails
};

// Checks that the hypergraph product of (h1, h2) gauge-fixes the pair of
// subsystem products built from (h1, h2) and (h2^T, h1^T): the product's
// stabilizer group sits inside the hypergraph product's stabilizer group,
// which sits inside the product's gauge group, with equal logical counts.
// The second block maps onto the small grid transposed: its (i, j) site is
// the hypergraph product's small (j, i).
GaugeFixReport verify_gauge_fixing(const BinaryMatrix& h1, const BinaryMatrix& h2);

}  // namespace sqc
