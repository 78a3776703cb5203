#include <gtest/gtest.h>

#include "dshlab/dsh_model.hpp"
#include "dshlab/errors.hpp"
#include "dshlab/random_fixtures.hpp"

namespace dshlab {
namespace {

// Level 1: points a, b of size 2. Level 2: free point x and glued point
// y = diag(a, b, a) of size 6.
ModelPtr small_model() {
  std::vector<Level> levels{
      {2, {{"a", false, {}}, {"b", false, {}}}},
      {6, {{"x", false, {}}, {"y", true, {{1, "a"}, {1, "b"}, {1, "a"}}}}},
  };
  return std::make_shared<const FiniteDshModel>(std::move(levels));
}

TEST(Model, ShapeQueries) {
  const auto m = small_model();
  EXPECT_TRUE(validate_model(*m).ok());
  EXPECT_EQ(m->dim(2), 6);
  EXPECT_EQ(m->max_dim(), 6);
  EXPECT_EQ(m->min_dim(), 2);
  EXPECT_EQ(m->free_points().size(), 3u);
  EXPECT_EQ(m->leaves({2, "y"}), (std::vector<PointRef>{{1, "a"}, {1, "b"}, {1, "a"}}));
  EXPECT_THROW(m->point({2, "z"}), DomainError);
}

TEST(Model, ValidationFindsDefects) {
  std::vector<Level> wrong_sum{{2, {{"a", false, {}}}}, {5, {{"y", true, {{1, "a"}, {1, "a"}}}}}};
  EXPECT_FALSE(validate_model(FiniteDshModel(wrong_sum)).ok());
  std::vector<Level> glued_first{{2, {{"a", true, {}}}}};
  EXPECT_FALSE(validate_model(FiniteDshModel(glued_first)).ok());
  std::vector<Level> dangling{{2, {{"a", false, {}}}}, {2, {{"y", true, {{1, "q"}}}}}};
  EXPECT_FALSE(validate_model(FiniteDshModel(dangling)).ok());
  std::vector<Level> decreasing{{3, {{"a", false, {}}}}, {2, {{"b", false, {}}}}};
  EXPECT_FALSE(validate_model(FiniteDshModel(decreasing)).ok());
}

TEST(Element, GluedValueIsBlockDiagonal) {
  const auto m = small_model();
  Rng rng(1);
  const Element e = random_element(rng, m);
  const std::vector<ComplexMatrix> blocks{e.value({1, "a"}), e.value({1, "b"}), e.value({1, "a"})};
  EXPECT_EQ(eval_element(e, {2, "y"}), block_diagonal(blocks));
  EXPECT_THROW(e.value({2, "y"}), DomainError);
}

TEST(Element, ArithmeticIsPointwise) {
  const auto m = small_model();
  Rng rng(2);
  const Element a = random_element(rng, m), b = random_element(rng, m);
  for (const auto& p : m->free_points()) {
    EXPECT_TRUE((a * b).value(p).approx_equal(a.value(p) * b.value(p)));
    EXPECT_TRUE((a + b).value(p).approx_equal(a.value(p) + b.value(p)));
    EXPECT_TRUE(a.adjoint().value(p).approx_equal(a.value(p).adjoint()));
  }
  EXPECT_DOUBLE_EQ(norm_dist(a, a), 0.0);
  EXPECT_TRUE(is_invertible(Element::unit(m), 0.5));
  EXPECT_FALSE(is_invertible(Element::zero(m), 1e-9));
}

TEST(DiagonalMaps, ComposeAgreesWithSequentialApplication) {
  const auto src = small_model();
  std::vector<Level> mid_levels{{4, {{"p", false, {}}}}, {8, {{"q", false, {}}}}};
  const auto mid = std::make_shared<const FiniteDshModel>(std::move(mid_levels));
  const DiagonalMap d1(src, mid,
                       {{{1, "p"}, {{1, "a"}, {1, "b"}}}, {{2, "q"}, {{1, "b"}, {2, "y"}}}});
  std::vector<Level> top_levels{{12, {{"r", false, {}}}}};
  const auto top = std::make_shared<const FiniteDshModel>(std::move(top_levels));
  const DiagonalMap d2(mid, top, {{{1, "r"}, {{1, "p"}, {2, "q"}}}});
  Rng rng(4);
  const Element e = random_element(rng, src);
  const Element seq = apply_diagonal_map(d2, apply_diagonal_map(d1, e));
  const Element direct = apply_diagonal_map(compose_diagonal_maps(d2, d1), e);
  EXPECT_TRUE(seq.value({1, "r"}).approx_equal(direct.value({1, "r"})));
  EXPECT_EQ(compose_diagonal_maps(d2, d1).eigenvalue_list({1, "r"}),
            (std::vector<PointRef>{{1, "a"}, {1, "b"}, {1, "b"}, {2, "y"}}));
}

TEST(DiagonalMaps, RejectsSizeMismatch) {
  const auto src = small_model();
  std::vector<Level> levels{{3, {{"p", false, {}}}}};
  const auto tgt = std::make_shared<const FiniteDshModel>(std::move(levels));
  EXPECT_THROW(DiagonalMap(src, tgt, {{{1, "p"}, {{1, "a"}}}}), PreconditionError);
}

TEST(BlockStarts, FreeAndGluedPoints) {
  const auto m = small_model();
  EXPECT_EQ(block_starts_at(*m, {1, "a"}), (std::vector<int>{1}));
  EXPECT_EQ(block_starts_at(*m, {2, "x"}), (std::vector<int>{1}));
  EXPECT_EQ(block_starts_at(*m, {2, "y"}), (std::vector<int>{1, 3, 5}));
}

TEST(BlockStarts, WitnessBreaksOnlyNonStarts) {
  const auto m = small_model();
  for (int k = 1; k <= 6; ++k) {
    const bool start = k % 2 == 1;
    if (start) {
      EXPECT_THROW(witness_no_block_point(m, {2, "y"}, k), DomainError);
    } else {
      const Element w = witness_no_block_point(m, {2, "y"}, k);
      EXPECT_FALSE(has_block_point(eval_element(w, {2, "y"}), k));
    }
  }
}

TEST(Indicator, OnesAtOffsetsFromBlockStarts) {
  const auto m = small_model();
  const Element theta = build_indicator(m, 1, {0}, {});
  const ComplexMatrix y = eval_element(theta, {2, "y"});
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(y(k - 1, k - 1), Complex(k % 2 == 1 ? 1.0 : 0.0));
  EXPECT_THROW(build_indicator(m, 1, {0}, {{{1, "a"}, 1}}), DomainError);
  EXPECT_THROW(build_indicator(m, 3, {0}, {}), PreconditionError);
}

TEST(Restrict, KeepsListedPoints) {
  const auto m = small_model();
  const auto r = std::make_shared<const FiniteDshModel>(restrict_model(*m, {{1, "a"}, {1, "b"}, {2, "y"}}));
  EXPECT_TRUE(validate_model(*r).ok());
  EXPECT_FALSE(r->contains({2, "x"}));
  Rng rng(6);
  const Element e = random_element(rng, m);
  EXPECT_EQ(eval_element(restrict_element(e, r), {2, "y"}), eval_element(e, {2, "y"}));
  EXPECT_THROW(restrict_model(*m, {{1, "b"}, {2, "y"}}), PreconditionError);
}

TEST(SoftThreshold, ShrinksModuli) {
  const auto m = small_model();
  const Element e = Element::from_function(m, [](const PointRef& p) {
    return Complex(0.0, 3.0) * ComplexMatrix::identity(p.level == 1 ? 2 : 6);
  });
  const Element s = soft_threshold(e, 1.0);
  EXPECT_NEAR(std::abs(s.value({1, "a"})(0, 0) - Complex(0.0, 2.0)), 0.0, 1e-15);
  EXPECT_EQ(soft_threshold(e, 5.0).value({1, "a"}), ComplexMatrix::zero(2));
}

TEST(Simplicity, ChainThatSpreadsEverywhere) {
  // Level-one model with two points; the map doubles every list into both points.
  std::vector<Level> l0{{1, {{"a", false, {}}, {"b", false, {}}}}};
  const auto m0 = std::make_shared<const FiniteDshModel>(std::move(l0));
  std::vector<Level> l1{{2, {{"c", false, {}}, {"d", false, {}}}}};
  const auto m1 = std::make_shared<const FiniteDshModel>(std::move(l1));
  const DiagonalMap mixing(m0, m1, {{{1, "c"}, {{1, "a"}, {1, "b"}}}, {{1, "d"}, {{1, "b"}, {1, "a"}}}});
  const std::vector<DiagonalMap> chain{identity_map(m0), mixing};
  const auto w = check_simplicity_condition(chain, 0, {{1, "a"}});
  ASSERT_TRUE(w.holds);
  EXPECT_EQ(*w.j, 2);
  EXPECT_FALSE(check_simplicity_condition({identity_map(m0)}, 0, {{1, "a"}}).holds);
}

TEST(RandomModels, AlwaysValid) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteDshModel m = random_model(rng);
    EXPECT_TRUE(validate_model(m).ok());
    EXPECT_GE(m.dim(1), 3);
  }
}

}  // namespace
}  // namespace dshlab
