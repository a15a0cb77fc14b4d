#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sqc {

// Bit-packed vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVector from_indices(size_t n, const std::vector<size_t>& ones);

  size_t size() const { return n_; }
  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= 1ull << (i & 63); }
  void clear();

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }
  BitVector& operator&=(const BitVector& o);
  friend BitVector operator&(BitVector a, const BitVector& b) {
    a &= b;
    return a;
  }
  BitVector& operator|=(const BitVector& o);
  friend BitVector operator|(BitVector a, const BitVector& b) {
    a |= b;
    return a;
  }
  bool operator==(const BitVector&) const = default;

  size_t weight() const;
  bool any() const;
  bool dot(const BitVector& o) const;  // GF(2) inner product
  std::vector<size_t> ones() const;
  std::string to_string() const;  // e.g. "0110"

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Bit-packed row-major matrix over GF(2).
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(size_t rows, size_t cols)
      : r_(rows), c_(cols), stride_((cols + 63) / 64), w_(r_ * stride_, 0) {}

  static BinaryMatrix identity(size_t n);
  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BinaryMatrix from_strings(const std::vector<std::string>& rows);
  static BinaryMatrix from_row_vectors(const std::vector<BitVector>& rows, size_t cols);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool get(size_t r, size_t c) const { return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1; }
  void set(size_t r, size_t c, bool v) {
    uint64_t m = 1ull << (c & 63);
    if (v)
      w_[r * stride_ + (c >> 6)] |= m;
    else
      w_[r * stride_ + (c >> 6)] &= ~m;
  }

  BitVector row(size_t r) const;
  void set_row(size_t r, const BitVector& v);
  void xor_row(size_t dst, size_t src);  // row[dst] ^= row[src]
  void swap_rows(size_t a, size_t b);
  bool row_any(size_t r) const;

  BinaryMatrix transposed() const;
  BinaryMatrix operator*(const BinaryMatrix& o) const;
  bool operator==(const BinaryMatrix&) const = default;
  BitVector mul(const BitVector& v) const;      // M * v, v indexed by columns
  BitVector mul_left(const BitVector& v) const; // v * M, v indexed by rows

  static BinaryMatrix kron(const BinaryMatrix& a, const BinaryMatrix& b);
  static BinaryMatrix vstack(const BinaryMatrix& a, const BinaryMatrix& b);
  static BinaryMatrix hstack(const BinaryMatrix& a, const BinaryMatrix& b);
  BinaryMatrix submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;

  size_t rank() const;

  struct Rref;  // defined after the class: { m, pivots }
  // Reduced row echelon form. Pivots are chosen deterministically: for each
  // column left to right, the first remaining row with a set bit.
  Rref rref() const;

  // Basis of the right null space {v : M v = 0}, one vector per row, in rref.
  BinaryMatrix kernel_basis() const;

  // One solution x of M x = b, or nullopt if inconsistent.
  std::optional<BitVector> solve(const BitVector& b) const;

  // Inverse of a square invertible matrix; nullopt if singular.
  std::optional<BinaryMatrix> inverse() const;

  // Plain text format: "rows cols" header line, then one 0/1 string per row.
  std::string to_text() const;
  static BinaryMatrix from_text(const std::string& text);

 private:
  size_t r_ = 0, c_ = 0, stride_ = 0;
  std::vector<uint64_t> w_;
};

struct BinaryMatrix::Rref {
  BinaryMatrix m;
  std::vector<size_t> pivots;  // pivot column of each leading row, ascending
};

// Precomputed row-space membership tester.
class RowSpace {
 public:
  explicit RowSpace(const BinaryMatrix& m);
  bool contains(const BitVector& v) const;
  size_t rank() const { return basis_.size(); }

 private:
  std::vector<BitVector> basis_;  // reduced basis, leading columns distinct
  std::vector<size_t> lead_;
};

bool row_space_contains(const BinaryMatrix& m, const BitVector& v);
bool same_row_space(const BinaryMatrix& a, const BinaryMatrix& b);

}  // namespace sqc
