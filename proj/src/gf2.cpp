#include "sqc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace sqc {

namespace {

void check_same_size(size_t a, size_t b) {
  if (a != b) throw std::invalid_argument("bit vector size mismatch");
}

}  // namespace

BitVector BitVector::from_indices(size_t n, const std::vector<size_t>& ones) {
  BitVector v(n);
  for (size_t i : ones) {
    if (i >= n) throw std::out_of_range("bit index out of range");
    v.set(i, true);
  }
  return v;
}

void BitVector::clear() { std::fill(w_.begin(), w_.end(), 0); }

BitVector& BitVector::operator^=(const BitVector& o) {
  check_same_size(n_, o.n_);
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
  check_same_size(n_, o.n_);
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& o) {
  check_same_size(n_, o.n_);
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}

size_t BitVector::weight() const {
  size_t w = 0;
  for (uint64_t x : w_) w += std::popcount(x);
  return w;
}

bool BitVector::any() const {
  for (uint64_t x : w_)
    if (x) return true;
  return false;
}

bool BitVector::dot(const BitVector& o) const {
  check_same_size(n_, o.n_);
  uint64_t acc = 0;
  for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

std::vector<size_t> BitVector::ones() const {
  std::vector<size_t> out;
  for (size_t wi = 0; wi < w_.size(); ++wi) {
    uint64_t x = w_[wi];
    while (x) {
      out.push_back(wi * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BinaryMatrix BinaryMatrix::identity(size_t n) {
  BinaryMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  BinaryMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] & 1);
  }
  return m;
}

BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  BinaryMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < c; ++j) {
      char ch = rows[i][j];
      if (ch != '0' && ch != '1') throw std::invalid_argument("matrix rows must be 0/1");
      m.set(i, j, ch == '1');
    }
  }
  return m;
}

BinaryMatrix BinaryMatrix::from_row_vectors(const std::vector<BitVector>& rows, size_t cols) {
  BinaryMatrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

BitVector BinaryMatrix::row(size_t r) const {
  BitVector v(c_);
  std::copy(w_.begin() + r * stride_, w_.begin() + (r + 1) * stride_, v.words().begin());
  return v;
}

void BinaryMatrix::set_row(size_t r, const BitVector& v) {
  if (v.size() != c_) throw std::invalid_argument("row length mismatch");
  std::copy(v.words().begin(), v.words().end(), w_.begin() + r * stride_);
}

void BinaryMatrix::xor_row(size_t dst, size_t src) {
  uint64_t* d = w_.data() + dst * stride_;
  const uint64_t* s = w_.data() + src * stride_;
  for (size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BinaryMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  std::swap_ranges(w_.begin() + a * stride_, w_.begin() + (a + 1) * stride_,
                   w_.begin() + b * stride_);
}

bool BinaryMatrix::row_any(size_t r) const {
  const uint64_t* p = w_.data() + r * stride_;
  for (size_t i = 0; i < stride_; ++i)
    if (p[i]) return true;
  return false;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i) {
    const uint64_t* p = w_.data() + i * stride_;
    for (size_t wi = 0; wi < stride_; ++wi) {
      uint64_t x = p[wi];
      while (x) {
        size_t j = wi * 64 + std::countr_zero(x);
        x &= x - 1;
        t.set(j, i, true);
      }
    }
  }
  return t;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
  BinaryMatrix out(r_, o.c_);
  for (size_t i = 0; i < r_; ++i) {
    uint64_t* dst = out.w_.data() + i * out.stride_;
    const uint64_t* p = w_.data() + i * stride_;
    for (size_t wi = 0; wi < stride_; ++wi) {
      uint64_t x = p[wi];
      while (x) {
        size_t k = wi * 64 + std::countr_zero(x);
        x &= x - 1;
        const uint64_t* src = o.w_.data() + k * o.stride_;
        for (size_t j = 0; j < o.stride_; ++j) dst[j] ^= src[j];
      }
    }
  }
  return out;
}

BitVector BinaryMatrix::mul(const BitVector& v) const {
  if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
  BitVector out(r_);
  for (size_t i = 0; i < r_; ++i) {
    const uint64_t* p = w_.data() + i * stride_;
    uint64_t acc = 0;
    for (size_t wi = 0; wi < stride_; ++wi) acc ^= p[wi] & v.words()[wi];
    if (std::popcount(acc) & 1) out.set(i, true);
  }
  return out;
}

BitVector BinaryMatrix::mul_left(const BitVector& v) const {
  if (v.size() != r_) throw std::invalid_argument("vector-matrix shape mismatch");
  BitVector out(c_);
  for (size_t wi = 0; wi < v.words().size(); ++wi) {
    uint64_t x = v.words()[wi];
    while (x) {
      size_t i = wi * 64 + std::countr_zero(x);
      x &= x - 1;
      const uint64_t* p = w_.data() + i * stride_;
      for (size_t j = 0; j < stride_; ++j) out.words()[j] ^= p[j];
    }
  }
  return out;
}

BinaryMatrix BinaryMatrix::kron(const BinaryMatrix& a, const BinaryMatrix& b) {
  BinaryMatrix out(a.r_ * b.r_, a.c_ * b.c_);
  for (size_t i = 0; i < a.r_; ++i)
    for (size_t j = 0; j < a.c_; ++j) {
      if (!a.get(i, j)) continue;
      for (size_t k = 0; k < b.r_; ++k)
        for (size_t l = 0; l < b.c_; ++l)
          if (b.get(k, l)) out.set(i * b.r_ + k, j * b.c_ + l, true);
    }
  return out;
}

BinaryMatrix BinaryMatrix::vstack(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.c_ != b.c_ && a.r_ != 0 && b.r_ != 0)
    throw std::invalid_argument("vstack column mismatch");
  size_t cols = a.r_ ? a.c_ : b.c_;
  BinaryMatrix out(a.r_ + b.r_, cols);
  for (size_t i = 0; i < a.r_; ++i) out.set_row(i, a.row(i));
  for (size_t i = 0; i < b.r_; ++i) out.set_row(a.r_ + i, b.row(i));
  return out;
}

BinaryMatrix BinaryMatrix::hstack(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.r_ != b.r_) throw std::invalid_argument("hstack row mismatch");
  BinaryMatrix out(a.r_, a.c_ + b.c_);
  for (size_t i = 0; i < a.r_; ++i) {
    for (size_t j = 0; j < a.c_; ++j)
      if (a.get(i, j)) out.set(i, j, true);
    for (size_t j = 0; j < b.c_; ++j)
      if (b.get(i, j)) out.set(i, a.c_ + j, true);
  }
  return out;
}

BinaryMatrix BinaryMatrix::submatrix(const std::vector<size_t>& rows,
                                     const std::vector<size_t>& cols) const {
  BinaryMatrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      if (get(rows[i], cols[j])) out.set(i, j, true);
  return out;
}

BinaryMatrix::Rref BinaryMatrix::rref() const {
  Rref out;
  out.m = *this;
  BinaryMatrix& m = out.m;
  size_t lead = 0;
  for (size_t col = 0; col < c_ && lead < r_; ++col) {
    size_t pivot = lead;
    while (pivot < r_ && !m.get(pivot, col)) ++pivot;
    if (pivot == r_) continue;
    m.swap_rows(lead, pivot);
    for (size_t i = 0; i < r_; ++i)
      if (i != lead && m.get(i, col)) m.xor_row(i, lead);
    out.pivots.push_back(col);
    ++lead;
  }
  return out;
}

size_t BinaryMatrix::rank() const { return rref().pivots.size(); }

BinaryMatrix BinaryMatrix::kernel_basis() const {
  Rref rr = rref();
  std::vector<bool> is_pivot(c_, false);
  for (size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < c_; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  BinaryMatrix out(free_cols.size(), c_);
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    size_t f = free_cols[fi];
    out.set(fi, f, true);
    for (size_t r = 0; r < rr.pivots.size(); ++r)
      if (rr.m.get(r, f)) out.set(fi, rr.pivots[r], true);
  }
  return out;
}

std::optional<BitVector> BinaryMatrix::solve(const BitVector& b) const {
  if (b.size() != r_) throw std::invalid_argument("rhs length mismatch");
  BinaryMatrix aug(r_, c_ + 1);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j)
      if (get(i, j)) aug.set(i, j, true);
    if (b.get(i)) aug.set(i, c_, true);
  }
  Rref rr = aug.rref();
  BitVector x(c_);
  for (size_t r = 0; r < rr.pivots.size(); ++r) {
    if (rr.pivots[r] == c_) return std::nullopt;  // 0 = 1 row
    if (rr.m.get(r, c_)) x.set(rr.pivots[r], true);
  }
  return x;
}

std::optional<BinaryMatrix> BinaryMatrix::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
  BinaryMatrix aug = hstack(*this, identity(r_));
  Rref rr = aug.rref();
  if (rr.pivots.size() < r_ || (r_ && rr.pivots.back() >= r_)) return std::nullopt;
  for (size_t i = 0; i < r_; ++i)
    if (rr.pivots[i] != i) return std::nullopt;
  BinaryMatrix inv(r_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < r_; ++j)
      if (rr.m.get(i, r_ + j)) inv.set(i, j, true);
  return inv;
}

std::string BinaryMatrix::to_text() const {
  std::ostringstream os;
  os << r_ << ' ' << c_ << '\n';
  for (size_t i = 0; i < r_; ++i) os << row(i).to_string() << '\n';
  return os.str();
}

BinaryMatrix BinaryMatrix::from_text(const std::string& text) {
  std::istringstream is(text);
  long long r = -1, c = -1;
  if (!(is >> r >> c) || r < 0 || c < 0) throw std::invalid_argument("bad matrix header");
  BinaryMatrix m(static_cast<size_t>(r), static_cast<size_t>(c));
  for (long long i = 0; i < r; ++i) {
    std::string line;
    if (!(is >> line) || line.size() != static_cast<size_t>(c))
      throw std::invalid_argument("bad matrix row");
    for (long long j = 0; j < c; ++j) {
      char ch = line[static_cast<size_t>(j)];
      if (ch != '0' && ch != '1') throw std::invalid_argument("matrix rows must be 0/1");
      if (ch == '1') m.set(static_cast<size_t>(i), static_cast<size_t>(j), true);
    }
  }
  std::string trailing;
  if (is >> trailing) throw std::invalid_argument("trailing content after matrix");
  return m;
}

RowSpace::RowSpace(const BinaryMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i) {
    BitVector v = m.row(i);
    for (size_t k = 0; k < basis_.size(); ++k)
      if (v.get(lead_[k])) v ^= basis_[k];
    if (!v.any()) continue;
    size_t lead = v.ones().front();
    // keep the basis reduced so membership tests are a single sweep
    for (size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k].get(lead)) basis_[k] ^= v;
    basis_.push_back(v);
    lead_.push_back(lead);
  }
}

bool RowSpace::contains(const BitVector& v) const {
  BitVector x = v;
  for (size_t k = 0; k < basis_.size(); ++k)
    if (x.get(lead_[k])) x ^= basis_[k];
  return !x.any();
}

bool row_space_contains(const BinaryMatrix& m, const BitVector& v) {
  return RowSpace(m).contains(v);
}

bool same_row_space(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols() != b.cols()) return false;
  RowSpace ra(a), rb(b);
  if (ra.rank() != rb.rank()) return false;
  for (size_t i = 0; i < b.rows(); ++i)
    if (!ra.contains(b.row(i))) return false;
  return true;
}

}  // namespace sqc
