#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dshlab/errors.hpp"
#include "dshlab/matrix.hpp"
#include "dshlab/random_fixtures.hpp"

namespace dshlab {
namespace {

// Composes image lists directly: (p * q)(j) = p(q(j)).
std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out;
  for (int j : q) out.push_back(p[static_cast<std::size_t>(j - 1)]);
  return out;
}

TEST(Permutation, CompositionMatchesImageLists) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 1, 9);
    std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    std::iota(a.begin(), a.end(), 1);
    std::iota(b.begin(), b.end(), 1);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    const Permutation p(a), q(b);
    EXPECT_EQ((p * q).images(), compose(a, b));
    EXPECT_EQ(p * p.inverse(), Permutation::identity(n));
    EXPECT_EQ(perm_matrix(p * q), perm_matrix(p) * perm_matrix(q));
  }
}

TEST(Permutation, CycleAndPower) {
  const Permutation c = Permutation::cycle(5, 2, 4);
  EXPECT_EQ(c.images(), (std::vector<int>{1, 3, 4, 2, 5}));
  EXPECT_EQ(c.power(3), Permutation::identity(5));
  EXPECT_EQ(c.power(-1), c.inverse());
  EXPECT_EQ(Permutation::transposition(4, 2, 2), Permutation::identity(4));
  EXPECT_EQ(Permutation::transposition(4, 1, 3).images(), (std::vector<int>{3, 2, 1, 4}));
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({1, 1, 2}), PreconditionError);
  EXPECT_THROW(Permutation({0, 1}), PreconditionError);
  EXPECT_THROW(Permutation::transposition(3, 1, 4), std::out_of_range);
}

TEST(PermMatrix, SendsBasisVectors) {
  const Permutation p({2, 3, 1});
  const ComplexMatrix m = perm_matrix(p);
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(m(i - 1, j - 1), Complex(i == p(j) ? 1.0 : 0.0));
}

TEST(ZeroPattern, CrossBlockPointAndRadius) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 2, 3}, {0, 0, 4, 5}});
  EXPECT_TRUE(has_zero_cross(a, 2));
  EXPECT_FALSE(has_zero_cross(a, 1));
  EXPECT_TRUE(has_block_point(a, 1));
  EXPECT_TRUE(has_block_point(a, 2));
  EXPECT_TRUE(has_block_point(a, 3));
  EXPECT_FALSE(has_block_point(a, 4));
  EXPECT_EQ(diagonal_radius(a), 2);
  EXPECT_EQ(diagonal_radius(ComplexMatrix::zero(3)), 0);
  EXPECT_EQ(diagonal_radius(ComplexMatrix::identity(3)), 1);
  EXPECT_THROW(has_zero_cross(a, 5), std::out_of_range);
}

// Brute-force radius: the largest |i-j| with a nonzero entry, plus one.
int radius_oracle(const ComplexMatrix& a) {
  int r = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (std::abs(a(i, j)) > kStructuralAtol) r = std::max(r, std::abs(i - j) + 1);
  return r;
}

TEST(ZeroPattern, StructuredFixturesHonorRequest) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 16);
    const int radius = uniform_int(rng, 0, n);
    const auto zs = random_positions(rng, n, uniform_int(rng, 0, n / 2));
    const ComplexMatrix a = random_structured_matrix(rng, n, radius, zs);
    EXPECT_EQ(diagonal_radius(a), radius_oracle(a));
    if (radius > 0) EXPECT_LE(diagonal_radius(a), radius);
    for (int z : zs) EXPECT_TRUE(has_zero_cross(a, z));
  }
}

TEST(Spectral, SingularValuesOfDiagonal) {
  const std::vector<Complex> d{Complex(0, 3), -1.0, 0.5};
  const ComplexMatrix a = ComplexMatrix::diagonal(std::span<const Complex>(d));
  const auto s = singular_values(a);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0], 3.0, 1e-14);
  EXPECT_NEAR(s[2], 0.5, 1e-14);
  EXPECT_NEAR(op_norm(a), 3.0, 1e-14);
  EXPECT_NEAR(min_singular_value(a), 0.5, 1e-14);
  EXPECT_NEAR(unitarity_defect(perm_matrix(Permutation::cycle(4, 1, 4))), 0.0, 1e-15);
  EXPECT_NEAR(unitarity_defect(a), 8.0, 1e-12);
}

TEST(ComplexMatrix, ArithmeticAndComparison) {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1, Complex(0, 1)}, {0, 2}});
  EXPECT_EQ(a.adjoint()(1, 0), Complex(0, -1));
  EXPECT_TRUE((a - a).approx_equal(ComplexMatrix::zero(2)));
  EXPECT_EQ(a.power(0), ComplexMatrix::identity(2));
  EXPECT_TRUE((a * a).approx_equal(a.power(2)));
  EXPECT_FALSE(a.approx_equal(ComplexMatrix::identity(3)));
  EXPECT_EQ(max_entry_distance(a, ComplexMatrix::identity(3)), std::numeric_limits<double>::infinity());
  const std::vector<ComplexMatrix> blocks{a, ComplexMatrix::identity(1)};
  const ComplexMatrix b = block_diagonal(blocks);
  EXPECT_EQ(b.dim(), 3);
  EXPECT_EQ(b(2, 2), Complex(1.0));
  EXPECT_EQ(b(0, 2), Complex(0.0));
}

}  // namespace
}  // namespace dshlab
