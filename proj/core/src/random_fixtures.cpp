#include "dshlab/random_fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "dshlab/errors.hpp"

namespace dshlab {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ComplexMatrix random_matrix(Rng& rng, int n) { return random_structured_matrix(rng, n, 0, {}); }

ComplexMatrix random_structured_matrix(Rng& rng, int n, int radius, const std::vector<int>& zero_crosses) {
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (radius > 0 && std::abs(i - j) >= radius) continue;
      a(i, j) = Complex(uniform_real(rng, -1.0, 1.0), uniform_real(rng, -1.0, 1.0));
    }
  }
  for (int z : zero_crosses) {
    a.row(z - 1).setZero();
    a.col(z - 1).setZero();
  }
  return ComplexMatrix(std::move(a));
}

std::vector<int> random_positions(Rng& rng, int n, int count) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(std::min(count, n)));
  std::sort(all.begin(), all.end());
  return all;
}

FiniteDshModel random_model(Rng& rng, const RandomModelConfig& config) {
  const int level_count = uniform_int(rng, 1, config.max_levels);
  std::vector<Level> levels;
  // free_by_dim[d] lists free points of dimension d on earlier levels.
  std::map<int, std::vector<PointRef>> free_by_dim;

  auto reachable = [&](int limit) {
    std::vector<bool> ok(static_cast<std::size_t>(limit + 1), false);
    ok[0] = true;
    for (int t = 1; t <= limit; ++t)
      for (const auto& [d, pts] : free_by_dim)
        if (d <= t && ok[static_cast<std::size_t>(t - d)]) ok[static_cast<std::size_t>(t)] = true;
    return ok;
  };
  auto random_list = [&](int total, const std::vector<bool>& ok) {
    std::vector<PointRef> list;
    for (int rest = total; rest > 0;) {
      std::vector<int> choices;
      for (const auto& [d, pts] : free_by_dim)
        if (d <= rest && ok[static_cast<std::size_t>(rest - d)]) choices.push_back(d);
      const int d = choices[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(choices.size()) - 1))];
      const auto& pts = free_by_dim[d];
      list.push_back(pts[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pts.size()) - 1))]);
      rest -= d;
    }
    return list;
  };

  int prev = uniform_int(rng, config.min_first_dim, std::max(config.min_first_dim, config.max_dim / 4));
  for (int l = 1; l <= level_count; ++l) {
    const int count = uniform_int(rng, 1, config.max_points_per_level);
    int dim = prev;
    std::vector<int> glued_slots;
    if (l > 1) {
      for (int j = 1; j < count; ++j)
        if (uniform_real(rng) < config.glue_probability) glued_slots.push_back(j);
      const auto ok = reachable(config.max_dim);
      std::vector<int> targets;
      for (int t = prev; t <= config.max_dim; ++t)
        if (ok[static_cast<std::size_t>(t)]) targets.push_back(t);
      if (glued_slots.empty() || targets.empty()) {
        glued_slots.clear();
        dim = uniform_int(rng, prev, config.max_dim);
      } else {
        dim = targets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(targets.size()) - 1))];
      }
    }
    Level level{dim, {}};
    const auto ok = reachable(dim);
    for (int j = 0; j < count; ++j) {
      PointSpec spec{"p" + std::to_string(j), false, {}};
      if (std::find(glued_slots.begin(), glued_slots.end(), j) != glued_slots.end()) {
        spec.glued = true;
        spec.gluing = random_list(dim, ok);
      }
      level.points.push_back(std::move(spec));
    }
    for (const auto& s : level.points)
      if (!s.glued) free_by_dim[dim].push_back({l, s.id});
    levels.push_back(std::move(level));
    prev = dim;
  }
  return FiniteDshModel(std::move(levels));
}

Element random_element(Rng& rng, const ModelPtr& model) {
  return Element::from_function(model, [&](const PointRef& p) { return random_matrix(rng, model->dim(p.level)); });
}

ThetaVector random_triangulation_theta(Rng& rng, int n, int block) {
  if (block < 1 || block >= n) throw PreconditionError("need 1 <= N < n");
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[0] = 1.0;
  for (int k = 1 + block + uniform_int(rng, 0, block); k <= n - block; k += block + uniform_int(rng, 0, block)) {
    v[static_cast<std::size_t>(k - 1)] = uniform_real(rng) < 0.5 ? 1.0 : uniform_real(rng, 0.05, 1.0);
  }
  return ThetaVector(std::move(v));
}

Element planted_singular_element(const ModelPtr& model, const PointRef& at, unsigned long seed) {
  Rng rng(seed);
  Element e = random_element(rng, model);
  auto values = e.values();
  const ComplexMatrix& a = values.at(at);
  Eigen::BDCSVD<DenseMatrix> svd(a.dense(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int n = a.dim();
  DenseMatrix cut = a.dense() - svd.singularValues()(n - 1) * svd.matrixU().col(n - 1) *
                                    svd.matrixV().col(n - 1).adjoint();
  values.at(at) = ComplexMatrix(std::move(cut));
  return Element(model, std::move(values));
}

}  // namespace dshlab
