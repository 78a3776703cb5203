#pragma once

// Seeded generators for property tests and the verification suites.

#include <random>
#include <vector>

#include "dshlab/dsh_model.hpp"
#include "dshlab/unitary_paths.hpp"

namespace dshlab {

using Rng = std::mt19937_64;

struct RandomModelConfig {
  int max_levels = 4;
  int max_points_per_level = 6;
  int min_first_dim = 3;
  int max_dim = 24;
  /// Chance that a point on level >= 2 is glued.
  double glue_probability = 0.5;
};

/// Entries with real and imaginary parts uniform in [-1, 1].
ComplexMatrix random_matrix(Rng& rng, int n);
/// Random matrix with diagonal radius at most `radius` (0 means unrestricted)
/// and zero crosses at the listed 1-based positions.
ComplexMatrix random_structured_matrix(Rng& rng, int n, int radius, const std::vector<int>& zero_crosses);
/// Sorted sample of `count` distinct positions from 1..n.
std::vector<int> random_positions(Rng& rng, int n, int count);
int uniform_int(Rng& rng, int lo, int hi);
double uniform_real(Rng& rng, double lo = 0.0, double hi = 1.0);

/// Valid model with normalized gluing (lists reference free points only).
FiniteDshModel random_model(Rng& rng, const RandomModelConfig& config = {});
Element random_element(Rng& rng, const ModelPtr& model);

/// Parameters satisfying the triangulation constraints for block size N,
/// with a mix of exact 1s and interior values.
ThetaVector random_triangulation_theta(Rng& rng, int n, int block);

/// Random element whose value at `at` has its smallest singular value removed.
Element planted_singular_element(const ModelPtr& model, const PointRef& at, unsigned long seed);

}  // namespace dshlab
