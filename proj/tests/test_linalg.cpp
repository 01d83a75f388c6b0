#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"

using namespace acc;
using namespace acc::testing;

namespace {

// Characteristic polynomial coefficients c_n..c_0 (monic first) by
// Faddeev-LeVerrier.
std::vector<Rational> charpoly(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[0] = 1;
  RationalMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    m = next;
    RationalMatrix am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

std::size_t sign_changes(const std::vector<Rational>& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& x : coeffs) {
    int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Symmetric matrices have real spectra, so Descartes' rule counts exactly.
Inertia inertia_by_descartes(const RationalMatrix& a) {
  auto c = charpoly(a);
  const std::size_t n = a.rows();
  Inertia out;
  while (out.zero < n && c[n - out.zero] == 0) ++out.zero;
  std::vector<Rational> trimmed(c.begin(), c.end() - static_cast<long>(out.zero));
  out.positive = sign_changes(trimmed);
  auto flipped = trimmed;
  const std::size_t deg = trimmed.size() - 1;
  for (std::size_t i = 0; i < trimmed.size(); ++i)
    if ((deg - i) % 2 == 1) flipped[i] = -flipped[i];
  out.negative = sign_changes(flipped);
  return out;
}

// Plain Gaussian elimination over Q.
std::size_t rank_by_gauss(RationalMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

RationalMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, bool symmetric,
                             int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = symmetric ? i : 0; j < cols; ++j) {
      m(i, j) = Rational(d(g), (d(g) == 0 ? 2 : 1));
      if (symmetric) m(j, i) = m(i, j);
    }
  return m;
}

// Low-rank symmetric matrices exercise the zero-diagonal branch more often.
RationalMatrix random_low_rank_symmetric(std::mt19937_64& g, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  std::uniform_int_distribution<std::size_t> k(0, n);
  const std::size_t r = k(g);
  RationalMatrix b(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = d(g);
  RationalMatrix s(r, r);
  for (std::size_t j = 0; j < r; ++j) s(j, j) = d(g) >= 0 ? 1 : -1;
  return b * s * transpose(b);
}

}  // namespace

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(rm({{-1, 1, 1}, {1, -2, 0}, {1, 0, -2}})),
            (std::vector<RationalVector>{rv({2, 1, 1})}));
  EXPECT_TRUE(kernel_basis(rm({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
  EXPECT_EQ(kernel_basis(rm({{0, 0}, {0, 0}})),
            (std::vector<RationalVector>{rv({1, 0}), rv({0, 1})}));
}

TEST(Inertia, SmallCases) {
  EXPECT_EQ(inertia(rm({{0, 1}, {1, 0}})), (Inertia{1, 1, 0}));
  EXPECT_EQ(inertia(rm({{0}})), (Inertia{0, 0, 1}));
  EXPECT_EQ(inertia(rm({{2, 1}, {1, 2}})), (Inertia{2, 0, 0}));
  EXPECT_EQ(inertia(rm({{1, 1}, {1, 1}})), (Inertia{1, 0, 1}));
}

TEST(Inertia, AgreesWithCharacteristicPolynomial) {
  std::mt19937_64 g(11);
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 1 + t % 6;
    auto a = t % 2 ? random_matrix(g, n, n, true, 3) : random_low_rank_symmetric(g, n);
    auto expected = inertia_by_descartes(a);
    ASSERT_EQ(inertia(a), expected) << "trial " << t;
    ASSERT_EQ(expected.positive + expected.negative + expected.zero, n);
  }
}

TEST(Rank, AgreesWithGauss) {
  std::mt19937_64 g(12);
  for (int t = 0; t < 400; ++t) {
    std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 6;
    auto a = t % 3 ? random_matrix(g, r, c, false, 2) : random_matrix(g, r, c, false, 1);
    ASSERT_EQ(rank(a), rank_by_gauss(a)) << "trial " << t;
  }
}

TEST(Kernel, SpansTheNullspace) {
  std::mt19937_64 g(13);
  for (int t = 0; t < 400; ++t) {
    std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 6;
    auto a = random_matrix(g, r, c, false, 1);
    auto basis = kernel_basis(a);
    ASSERT_EQ(basis.size(), c - rank_by_gauss(a));
    RationalMatrix b(c, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      ASSERT_TRUE(is_zero(a * basis[j]));
      for (std::size_t i = 0; i < c; ++i) {
        b(i, j) = basis[j][i];
        ASSERT_TRUE(is_integral(basis[j][i]));
      }
    }
    ASSERT_EQ(rank_by_gauss(b), basis.size());
  }
}

TEST(Products, Shapes) {
  auto a = rm({{1, 2, 3}, {4, 5, 6}});
  auto p = a * transpose(a);
  EXPECT_EQ(p, rm({{14, 32}, {32, 77}}));
  EXPECT_TRUE(is_symmetric(p));
  EXPECT_EQ(principal_submatrix(rm({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}}), {0, 2}), rm({{1, 3}, {3, 6}}));
  EXPECT_EQ(dot(rv({1, 2}), rv({3, 4})), Rational(11));
}

TEST(Rational, Helpers) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("x"));
  EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(1, 2)));
  EXPECT_EQ(primitive_integer(RationalVector{Rational(1, 2), Rational(1, 3)}), rv({3, 2}));
  EXPECT_EQ(to_string(Rational(-4, 6)), "-2/3");
}
