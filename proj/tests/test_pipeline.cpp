#include <gtest/gtest.h>

#include "dshlab/errors.hpp"
#include "dshlab/pipeline.hpp"
#include "dshlab/random_fixtures.hpp"

namespace dshlab {
namespace {

const CylinderChain& fibonacci_chain() {
  static const CylinderChain chain = [] {
    const auto s = Substitution::fibonacci();
    TowerOptions options;
    options.horizon = 1;
    return build_cylinder_chain(s, deepening_bases(s, "0", 12), options);
  }();
  return chain;
}

Element planted() {
  const auto& model = fibonacci_chain().model(0);
  return planted_singular_element(model, model->free_points(model->level_count()).front(), 7);
}

TEST(Chain, MapsMatchModels) {
  const auto& chain = fibonacci_chain();
  ASSERT_EQ(chain.maps.size() + 1, chain.towers.size());
  for (int j = 0; j + 1 < chain.size(); ++j) {
    EXPECT_EQ(chain.maps[static_cast<std::size_t>(j)].source(), chain.model(j));
    EXPECT_EQ(chain.maps[static_cast<std::size_t>(j)].target(), chain.model(j + 1));
  }
  EXPECT_EQ(chain_map(chain.maps, 2, 2).lists(), identity_map(chain.model(2)).lists());
  EXPECT_THROW(chain_map(chain.maps, 3, 1), PreconditionError);
}

TEST(ZeroCross, PlantedSingularity) {
  const Element a = planted();
  ASSERT_TRUE(find_singular_point(a, 1e-9).has_value());
  const ZeroCrossStage zc = make_zero_cross(a, 0.0625);
  EXPECT_LT(zc.distance, 0.0625);
  EXPECT_FALSE(zc.u.empty());
  const Element moved = zc.left * zc.perturbed * zc.right;
  for (const auto& p : zc.u) EXPECT_TRUE(has_zero_cross(moved.value(p), 1)) << to_string(p);
  EXPECT_LE(norm_dist(a, zc.perturbed), zc.distance + 1e-12);
}

TEST(ZeroCross, RejectsWellConditionedInput) {
  const Element u = Element::unit(fibonacci_chain().model(0));
  EXPECT_THROW(make_zero_cross(u, 0.1), DomainError);
  EXPECT_THROW(make_zero_cross(planted(), 0.0), PreconditionError);
}

TEST(OpenBlockPoints, StaysWithinBudget) {
  Rng rng(17);
  const Element g = random_element(rng, fibonacci_chain().model(3));
  const OpenBlockStage open = open_block_points(g, 0.05);
  EXPECT_LE(open.distance, 0.05);
  EXPECT_LE(norm_dist(g, open.result), open.distance + 1e-12);
}

TEST(ScalarShift, AddsMultipleOfUnit) {
  const auto& model = fibonacci_chain().model(1);
  const Element z = Element::zero(model);
  const Element s = rordam_invert(z, 0.25);
  EXPECT_DOUBLE_EQ(norm_dist(s, 0.25 * Element::unit(model)), 0.0);
  EXPECT_THROW(rordam_invert(z, 0.0), PreconditionError);
}

TEST(Pipeline, InvertibleInputIsTrivial) {
  const auto& model = fibonacci_chain().model(0);
  const auto result = approximate_by_invertible(fibonacci_chain(), 0, Element::unit(model), 0.25);
  EXPECT_TRUE(result.certificate.passes());
  EXPECT_EQ(result.certificate.total_distance, 0.0);
  ASSERT_EQ(result.certificate.stages.size(), 1u);
}

TEST(Pipeline, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(approximate_by_invertible(fibonacci_chain(), 0, planted(), 0.0), PreconditionError);
}

TEST(Pipeline, ShortChainIsDomainFailure) {
  const auto s = Substitution::fibonacci();
  TowerOptions options;
  const CylinderChain shallow = build_cylinder_chain(s, deepening_bases(s, "0", 4), options);
  const auto& model = shallow.model(0);
  const Element a = planted_singular_element(model, model->free_points(model->level_count()).front(), 7);
  EXPECT_THROW(approximate_by_invertible(shallow, 0, a, 0.25), DomainError);
}

TEST(Pipeline, PlantedSingularityWithinBudget) {
  const Element a = planted();
  const auto result = approximate_by_invertible(fibonacci_chain(), 0, a, 0.25);
  const auto& c = result.certificate;
  EXPECT_TRUE(c.predicates_pass());
  EXPECT_LT(c.total_distance, 0.25);
  EXPECT_LE(c.total_distance, c.stage_distance_sum + 1e-9);
  EXPECT_GT(c.n, c.r + c.m + 2);
  EXPECT_GT(c.min_singular_value, 0.0);
  const Element target = apply_diagonal_map(chain_map(fibonacci_chain().maps, 0, c.model_out), a);
  EXPECT_NEAR(norm_dist(target, result.output), c.total_distance, 1e-12);
  std::vector<std::string> names;
  for (const auto& s : c.stages) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"zero_cross", "propagate", "open_block_points", "condense",
                                             "triangulate", "scalar_shift"}));
}

}  // namespace
}  // namespace dshlab
