#include <doctest.h>

#include <cmath>
#include <random>

#include "sqc/gf2.hpp"
#include "sqc/rng.hpp"

using namespace sqc;

namespace {

BinaryMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64& gen) {
  BinaryMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.set(r, c, gen() & 1);
  return m;
}

BitVector random_vector(size_t n, std::mt19937_64& gen) {
  BitVector v(n);
  for (size_t i = 0; i < n; ++i)
    if (gen() & 1) v.flip(i);
  return v;
}

// Naive O(n^3) reference product over GF(2).
BinaryMatrix slow_mul(const BinaryMatrix& a, const BinaryMatrix& b) {
  BinaryMatrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      bool s = false;
      for (size_t k = 0; k < a.cols(); ++k) s ^= a.get(i, k) && b.get(k, j);
      out.set(i, j, s);
    }
  return out;
}

}  // namespace

TEST_CASE("bitvector basics across word boundaries") {
  BitVector v(130);
  CHECK(v.size() == 130);
  CHECK_FALSE(v.any());
  v.set(0, true);
  v.set(63, true);
  v.set(64, true);
  v.set(129, true);
  CHECK(v.weight() == 4);
  CHECK(v.ones() == std::vector<size_t>{0, 63, 64, 129});
  v.flip(64);
  CHECK(v.weight() == 3);
  CHECK_FALSE(v.get(64));

  BitVector w = BitVector::from_indices(130, {0, 129});
  CHECK((v ^ w).ones() == std::vector<size_t>{63});
  CHECK((v & w) == BitVector::from_indices(130, {0, 129}));
  CHECK((v | w) == v);
  CHECK(v.dot(w) == false);  // two shared ones cancel
  CHECK(v.dot(BitVector::from_indices(130, {63})) == true);
  v.clear();
  CHECK_FALSE(v.any());
}

TEST_CASE("bitvector string round trip") {
  BitVector v = BitVector::from_indices(5, {1, 4});
  CHECK(v.to_string() == "01001");
}

TEST_CASE("matrix construction agrees between entry points") {
  BinaryMatrix a = BinaryMatrix::from_strings({"101", "011"});
  BinaryMatrix b = BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  CHECK(a == b);
  BinaryMatrix c = BinaryMatrix::from_row_vectors({a.row(0), a.row(1)}, 3);
  CHECK(a == c);
  CHECK(a.row(1).to_string() == "011");
}

TEST_CASE("matrix product matches the naive reference") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    size_t n = 1 + gen() % 70, m = 1 + gen() % 70, k = 1 + gen() % 70;
    BinaryMatrix a = random_matrix(n, m, gen);
    BinaryMatrix b = random_matrix(m, k, gen);
    CHECK(a * b == slow_mul(a, b));
  }
}

TEST_CASE("mul and mul_left match the product") {
  std::mt19937_64 gen(11);
  BinaryMatrix a = random_matrix(9, 70, gen);
  BitVector v = random_vector(70, gen);
  BitVector u = random_vector(9, gen);
  BitVector av = a.mul(v);
  BitVector ua = a.mul_left(u);
  for (size_t i = 0; i < 9; ++i) CHECK(av.get(i) == a.row(i).dot(v));
  BinaryMatrix at = a.transposed();
  for (size_t j = 0; j < 70; ++j) CHECK(ua.get(j) == at.row(j).dot(u));
}

TEST_CASE("rref is idempotent, rank-revealing, deterministic") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 25; ++trial) {
    size_t r = 1 + gen() % 12, c = 1 + gen() % 16;
    BinaryMatrix m = random_matrix(r, c, gen);
    auto rr = m.rref();
    CHECK(rr.pivots.size() == m.rank());
    CHECK(rr.m.rref().m == rr.m);
    // pivot columns are standard basis columns
    for (size_t i = 0; i < rr.pivots.size(); ++i)
      for (size_t row = 0; row < r; ++row) CHECK(rr.m.get(row, rr.pivots[i]) == (row == i));
    // same row space as the input
    CHECK(same_row_space(m, rr.m));
    // pivots ascend
    for (size_t i = 1; i < rr.pivots.size(); ++i) CHECK(rr.pivots[i - 1] < rr.pivots[i]);
  }
}

TEST_CASE("rref picks lowest-index pivots") {
  BinaryMatrix m = BinaryMatrix::from_strings({"0110", "0110", "0011"});
  auto rr = m.rref();
  CHECK(rr.pivots == std::vector<size_t>{1, 2});
  CHECK(rr.m.row(0).to_string() == "0101");
  CHECK(rr.m.row(1).to_string() == "0011");
  CHECK_FALSE(rr.m.row_any(2));
}

TEST_CASE("kernel basis spans exactly the null space") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    size_t r = 1 + gen() % 10, c = 1 + gen() % 14;
    BinaryMatrix m = random_matrix(r, c, gen);
    BinaryMatrix k = m.kernel_basis();
    CHECK(k.rows() == c - m.rank());
    for (size_t i = 0; i < k.rows(); ++i) CHECK_FALSE(m.mul(k.row(i)).any());
    CHECK(k.rank() == k.rows());
    // exhaustive when small: every kernel vector lies in the row space of k
    if (c <= 12) {
      size_t found = 0;
      RowSpace ks(k);
      for (uint64_t bits = 0; bits < (1ull << c); ++bits) {
        BitVector v(c);
        for (size_t i = 0; i < c; ++i)
          if ((bits >> i) & 1) v.set(i, true);
        if (!m.mul(v).any()) {
          ++found;
          CHECK(ks.contains(v));
        }
      }
      CHECK(found == (1ull << k.rows()));
    }
  }
}

TEST_CASE("solve finds a preimage exactly when one exists") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 40; ++trial) {
    size_t r = 1 + gen() % 10, c = 1 + gen() % 12;
    BinaryMatrix m = random_matrix(r, c, gen);
    BitVector x = random_vector(c, gen);
    BitVector b = m.mul(x);
    auto sol = m.solve(b);
    REQUIRE(sol.has_value());
    CHECK(m.mul(*sol) == b);
    // a vector outside the column space must be rejected
    BinaryMatrix mt = m.transposed();
    RowSpace cols(mt);
    BitVector bad = random_vector(r, gen);
    if (!cols.contains(bad)) CHECK_FALSE(m.solve(bad).has_value());
  }
}

TEST_CASE("inverse works and rejects singular matrices") {
  std::mt19937_64 gen(17);
  size_t inverted = 0;
  for (int trial = 0; trial < 60; ++trial) {
    size_t n = 1 + gen() % 9;
    BinaryMatrix m = random_matrix(n, n, gen);
    auto inv = m.inverse();
    if (m.rank() == n) {
      REQUIRE(inv.has_value());
      CHECK(m * *inv == BinaryMatrix::identity(n));
      CHECK(*inv * m == BinaryMatrix::identity(n));
      ++inverted;
    } else {
      CHECK_FALSE(inv.has_value());
    }
  }
  CHECK(inverted > 10);
}

TEST_CASE("kron dimensions and entries") {
  BinaryMatrix a = BinaryMatrix::from_strings({"10", "11"});
  BinaryMatrix b = BinaryMatrix::from_strings({"01", "10"});
  BinaryMatrix k = BinaryMatrix::kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      CHECK(k.get(i, j) == (a.get(i / 2, j / 2) && b.get(i % 2, j % 2)));
}

TEST_CASE("stack and submatrix") {
  BinaryMatrix a = BinaryMatrix::from_strings({"10", "11"});
  BinaryMatrix b = BinaryMatrix::from_strings({"01"});
  BinaryMatrix v = BinaryMatrix::vstack(a, b);
  CHECK(v == BinaryMatrix::from_strings({"10", "11", "01"}));
  BinaryMatrix h = BinaryMatrix::hstack(a, a);
  CHECK(h == BinaryMatrix::from_strings({"1010", "1111"}));
  CHECK(v.submatrix({0, 2}, {1}) == BinaryMatrix::from_strings({"0", "1"}));
}

TEST_CASE("text round trip") {
  std::mt19937_64 gen(23);
  BinaryMatrix m = random_matrix(5, 70, gen);
  CHECK(BinaryMatrix::from_text(m.to_text()) == m);
}

TEST_CASE("row space membership") {
  BinaryMatrix m = BinaryMatrix::from_strings({"1100", "0110"});
  RowSpace rs(m);
  CHECK(rs.rank() == 2);
  CHECK(rs.contains(BitVector::from_indices(4, {0, 2})));  // sum of the rows
  CHECK(rs.contains(BitVector(4)));
  CHECK_FALSE(rs.contains(BitVector::from_indices(4, {0})));
  CHECK(same_row_space(m, BinaryMatrix::from_strings({"1010", "0110"})));
  CHECK_FALSE(same_row_space(m, BinaryMatrix::from_strings({"1000", "0110"})));
}

TEST_CASE("counter rng is stream-stable and roughly uniform") {
  Rng a(42, 0), b(42, 0), c(42, 1);
  std::vector<uint64_t> seq;
  for (int i = 0; i < 64; ++i) seq.push_back(a.next_u64());
  for (int i = 0; i < 64; ++i) CHECK(b.next_u64() == seq[i]);
  bool differs = false;
  for (int i = 0; i < 64; ++i) differs |= c.next_u64() != seq[i];
  CHECK(differs);

  Rng d(1, 7);
  size_t heads = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) heads += d.bernoulli(0.25);
  CHECK(heads > n * 0.25 - 5 * std::sqrt(n * 0.25 * 0.75));
  CHECK(heads < n * 0.25 + 5 * std::sqrt(n * 0.25 * 0.75));
  size_t hist[8] = {0};
  for (int i = 0; i < n; ++i) ++hist[d.uniform(8)];
  for (size_t h : hist) CHECK(h > n / 8 - 5 * std::sqrt(n / 8.0));
}
