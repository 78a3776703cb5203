#include "dshlab/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "dshlab/errors.hpp"
#include "dshlab/unitary_paths.hpp"

namespace dshlab {

namespace {

constexpr double kUnitaryTol = 1e-10;

// Records the first failing witness per predicate name.
class Checks {
 public:
  explicit Checks(PredicateMap& out) : out_(out) {}

  void require(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    auto& r = out_[name];
    if (!ok && r.pass) {
      r.pass = false;
      r.witness = witness();
    }
  }

 private:
  PredicateMap& out_;
};

std::vector<double> diagonal_of(const ComplexMatrix& a) {
  std::vector<double> d(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) d[static_cast<std::size_t>(i)] = a(i, i).real();
  return d;
}

ComplexMatrix embed_block(int n, int at, const ComplexMatrix& block) {
  DenseMatrix x = DenseMatrix::Identity(n, n);
  x.block(at - 1, at - 1, block.dim(), block.dim()) = block.dense();
  return ComplexMatrix(std::move(x));
}

// Builds a unitary element from a pointwise formula and checks that the
// formula evaluated at glued points agrees with the assembled value.
Element unitary_from_formula(const ModelPtr& model,
                             const std::function<ComplexMatrix(const PointRef&)>& formula,
                             Checks& checks) {
  Element v = Element::from_function(model, formula);
  for (const auto& p : model->all_points()) {
    const ComplexMatrix assembled = eval_element(v, p);
    checks.require("unitary", unitarity_defect(assembled) <= kUnitaryTol,
                   [&] { return "unitarity defect at " + to_string(p); });
    if (model->point(p).glued) {
      checks.require("assembly", formula(p).approx_equal(assembled, kPathAtol),
                     [&] { return "formula disagrees with gluing at " + to_string(p); });
    }
  }
  return v;
}

void require_crosses(const Element& g, const std::function<std::vector<int>(int)>& positions,
                     const std::string& name, Checks& checks) {
  const auto& model = *g.model();
  for (const auto& p : model.all_points()) {
    const ComplexMatrix v = eval_element(g, p);
    for (int k : block_starts_at(model, p)) {
      for (int z : positions(k)) {
        checks.require(name, z <= v.dim() && has_zero_cross(v, z), [&] {
          return "no zero cross at " + std::to_string(z) + " for block start " + std::to_string(k) +
                 " at " + to_string(p);
        });
      }
    }
  }
}

// For lower triangular L, 1 / ||L^{-1}|| via forward substitution; stays
// accurate far below the rounding floor of an SVD of L itself.
double triangular_min_singular_value(const ComplexMatrix& lower) {
  const DenseMatrix inv = lower.dense().triangularView<Eigen::Lower>().solve(
      DenseMatrix::Identity(lower.dim(), lower.dim()));
  return 1.0 / op_norm(ComplexMatrix(inv));
}

std::vector<int> arithmetic(int start, int step, int count) {
  std::vector<int> out;
  for (int a = 0; a < count; ++a) out.push_back(start + a * step);
  return out;
}

}  // namespace

std::vector<std::string> deepening_bases(const Substitution& s, const std::string& first,
                                         int count, std::size_t scan_length) {
  if (count < 1) throw PreconditionError("chain needs at least one base word");
  std::vector<std::string> out{first};
  while (static_cast<int>(out.size()) < count) out.push_back(deeper_base(s, out.back(), scan_length));
  return out;
}

CylinderChain build_cylinder_chain(const Substitution& s, const std::vector<std::string>& bases,
                                   const TowerOptions& options) {
  if (bases.empty()) throw PreconditionError("chain needs at least one base word");
  CylinderChain chain;
  for (const auto& b : bases) chain.towers.push_back(build_tower_model(s, b, options));
  for (std::size_t j = 1; j < bases.size(); ++j) {
    const auto f = factorize_returns(s, bases[j - 1], bases[j], options.scan_length);
    chain.maps.push_back(embedding_map(f, chain.towers[j - 1], chain.towers[j]));
  }
  return chain;
}

DiagonalMap chain_map(const std::vector<DiagonalMap>& maps, int i, int j) {
  if (i < 0 || j < i || j > static_cast<int>(maps.size())) {
    throw PreconditionError("no chain map from model " + std::to_string(i) + " to " +
                            std::to_string(j));
  }
  if (i == j) {
    return identity_map(i < static_cast<int>(maps.size()) ? maps[static_cast<std::size_t>(i)].source()
                                                          : maps.back().target());
  }
  DiagonalMap out = maps[static_cast<std::size_t>(i)];
  for (int k = i + 1; k < j; ++k) out = compose_diagonal_maps(maps[static_cast<std::size_t>(k)], out);
  return out;
}

std::optional<PointRef> find_singular_point(const Element& e, double tol) {
  std::optional<PointRef> best;
  double best_sigma = 0.0;
  for (const auto& [p, a] : e.values()) {
    const double s = min_singular_value(a);
    if (s > tol) continue;
    if (!best || p.level > best->level || (p.level == best->level && s < best_sigma)) {
      best = p;
      best_sigma = s;
    }
  }
  return best;
}

ZeroCrossStage make_zero_cross(const Element& e, double budget) {
  if (!(budget > 0.0)) throw PreconditionError("zero-cross budget must be positive");
  const auto located = find_singular_point(e, std::nextafter(budget, 0.0));
  if (!located) {
    throw DomainError("element is not " + std::to_string(budget) +
                      "-close to singular at any point");
  }
  const ModelPtr& model = e.model();
  std::set<PointRef> u;
  for (const auto& p : model->free_points(located->level)) {
    if (min_singular_value(e.value(p)) < budget) u.insert(p);
  }

  std::map<PointRef, ComplexMatrix> perturbed = e.values();
  std::map<PointRef, ComplexMatrix> left, right, delta;
  double distance = 0.0;
  for (const auto& p : model->free_points()) {
    const int n = model->dim(p.level);
    left.emplace(p, ComplexMatrix::identity(n));
    right.emplace(p, ComplexMatrix::identity(n));
    delta.emplace(p, ComplexMatrix::zero(n));
  }
  for (const auto& p : u) {
    const ComplexMatrix& a = e.value(p);
    const int n = a.dim();
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    d[0] = 1.0;
    delta.at(p) = ComplexMatrix::diagonal(std::span<const double>(d));
    if (has_zero_cross(a, 1)) continue;
    Eigen::BDCSVD<DenseMatrix> svd(a.dense(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const DenseMatrix& uu = svd.matrixU();
    const DenseMatrix& vv = svd.matrixV();
    const double smallest = s(n - 1);
    DenseMatrix cut = a.dense() - smallest * uu.col(n - 1) * vv.col(n - 1).adjoint();
    const DenseMatrix swap = perm_matrix(Permutation::transposition(n, 1, n)).dense();
    perturbed.at(p) = ComplexMatrix(std::move(cut));
    left.at(p) = ComplexMatrix(DenseMatrix(swap * uu.adjoint()));
    right.at(p) = ComplexMatrix(DenseMatrix(vv * swap));
    distance = std::max(distance, smallest);
  }

  ZeroCrossStage out{Element(model, std::move(perturbed)),
                     Element(model, std::move(left)),
                     Element(model, std::move(right)),
                     Element(model, std::move(delta)),
                     std::move(u),
                     0.0,
                     {}};
  out.distance = norm_dist(e, out.perturbed);
  Checks checks(out.predicates);
  checks.require("distance_below_budget", out.distance < budget,
                 [&] { return "distance " + std::to_string(out.distance); });
  const Element rotated = out.left * out.perturbed * out.right;
  for (const auto& p : model->all_points()) {
    const ComplexMatrix r = eval_element(rotated, p);
    const ComplexMatrix d = eval_element(out.delta, p);
    for (int k = 1; k <= r.dim(); ++k) {
      checks.require("delta_marks_crosses", d(k - 1, k - 1).real() <= 0.0 || has_zero_cross(r, k),
                     [&] { return "delta positive without a cross at " + std::to_string(k) +
                                  " of " + to_string(p); });
    }
    checks.require("unitary", unitarity_defect(eval_element(out.left, p)) <= kUnitaryTol &&
                                  unitarity_defect(eval_element(out.right, p)) <= kUnitaryTol,
                   [&] { return "rotation not unitary at " + to_string(p); });
  }
  for (const auto& p : out.u) {
    checks.require("zero_cross_at_1", has_zero_cross(rotated.value(p), 1),
                   [&] { return "no zero cross at 1 at " + to_string(p); });
  }
  return out;
}

PropagateStage propagate_crosses(const CylinderChain& chain, int j, const ZeroCrossStage& zc,
                                 int block_count) {
  if (block_count < 1) throw PreconditionError("need at least one cross per block start");
  if (j < 0 || j >= chain.size()) throw PreconditionError("model index out of range");
  const auto simple = check_simplicity_condition(chain.maps, j, zc.u);
  if (!simple.holds) {
    throw DomainError("simplicity condition fails: eigenvalue lists never all meet U");
  }
  PropagateStage out{*simple.j, 0, 0, 0, block_count, zc.perturbed, zc.perturbed, zc.perturbed, {}};
  out.m = 2 * chain.model(out.j_simple)->max_dim();
  out.r = chain.model(j)->max_dim();
  const int nm = block_count * out.m;
  int target = -1;
  for (int k = std::max(out.j_simple, j + 1); k < chain.size(); ++k) {
    if (chain.model(k)->min_dim() > nm) {
      target = k;
      break;
    }
  }
  if (target < 0) {
    throw DomainError("chain too short: need a model with n_1 > N*M = " + std::to_string(nm) +
                      " at or after model " + std::to_string(out.j_simple));
  }
  out.j_target = target;

  const DiagonalMap phi = chain_map(chain.maps, j, target);
  const ModelPtr& model = phi.target();
  const Element g = apply_diagonal_map(phi, zc.left * zc.perturbed * zc.right);
  const Element delta = apply_diagonal_map(phi, zc.delta);
  const Element theta = build_indicator(model, out.m, arithmetic(0, out.m, block_count));
  const int m = out.m;

  Checks checks(out.predicates);
  auto formula = [&](const PointRef& x) {
    const auto th = diagonal_of(eval_element(theta, x));
    const auto de = diagonal_of(eval_element(delta, x));
    const int n = static_cast<int>(th.size());
    DenseMatrix v = DenseMatrix::Identity(n, n);
    for (int k = 1; k <= n - m + 1; ++k) {
      const double t = th[static_cast<std::size_t>(k - 1)];
      if (t == 0.0) continue;
      std::vector<double> params;
      for (int a = 1; a < m; ++a) params.push_back(t * de[static_cast<std::size_t>(k + a - 1)]);
      v = v * gather_window_unitary(n, k, params).dense();
    }
    return ComplexMatrix(std::move(v));
  };
  const Element v = unitary_from_formula(model, formula, checks);
  out.g = v * g * v.adjoint();
  out.v1 = v * apply_diagonal_map(phi, zc.left);
  out.v2 = apply_diagonal_map(phi, zc.right) * v.adjoint();

  for (const auto& p : model->all_points()) {
    const auto de = diagonal_of(eval_element(delta, p));
    const int n = static_cast<int>(de.size());
    for (int k = 1; k + m - 1 <= n - m; ++k) {
      bool has_one = false;
      for (int i = k; i < k + m; ++i) has_one = has_one || de[static_cast<std::size_t>(i - 1)] == 1.0;
      checks.require("delta_window_has_one", has_one, [&] {
        return "no marked cross in window " + std::to_string(k) + " at " + to_string(p);
      });
    }
  }
  require_crosses(out.g, [&](int k) { return arithmetic(k, m, block_count); }, "periodic_crosses",
                  checks);
  for (const auto& p : model->all_points()) {
    const int r = diagonal_radius(eval_element(out.g, p));
    checks.require("radius_below_R_plus_M", r < out.r + m, [&] {
      return "radius " + std::to_string(r) + " at " + to_string(p);
    });
  }
  const Element rebuilt = out.v1 * apply_diagonal_map(phi, zc.perturbed) * out.v2;
  checks.require("factorization", norm_dist(rebuilt, out.g) <= 1e-10,
                 [&] { return "V1 phi(e') V2 differs from G"; });
  return out;
}

OpenBlockStage open_block_points(const Element& g, double budget) {
  if (!(budget > 0.0)) throw PreconditionError("block-point budget must be positive");
  const int nl = g.model()->max_dim();
  double hi = 0.0;
  for (const auto& [p, a] : g.values()) hi = std::max(hi, a.max_abs_entry());
  double lo = budget / nl * (1.0 - 1e-9);
  auto dist = [&](double d) { return norm_dist(g, soft_threshold(g, d)); };
  double chosen = lo;
  if (hi <= lo) {
    chosen = hi;
  } else if (dist(hi) < budget) {
    chosen = hi;
  } else {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (dist(mid) < budget) lo = mid;
      else hi = mid;
    }
    chosen = lo;
  }
  OpenBlockStage out{soft_threshold(g, chosen), chosen, 0.0, {}};
  out.distance = norm_dist(g, out.result);
  Checks checks(out.predicates);
  checks.require("distance_below_budget", out.distance < budget,
                 [&] { return "distance " + std::to_string(out.distance); });
  const auto& model = *g.model();
  for (const auto& p : model.all_points()) {
    const ComplexMatrix before = eval_element(g, p);
    const ComplexMatrix after = eval_element(out.result, p);
    for (int k = 1; k <= before.dim(); ++k) {
      checks.require("crosses_retained", !has_zero_cross(before, k) || has_zero_cross(after, k),
                     [&] { return "lost cross at " + std::to_string(k) + " of " + to_string(p); });
    }
    checks.require("radius_not_increased", diagonal_radius(after) <= diagonal_radius(before),
                   [&] { return "radius grew at " + to_string(p); });
    for (int k : block_starts_at(model, p)) {
      checks.require("block_points", has_block_point(after, k), [&] {
        return "no block point at " + std::to_string(k) + " of " + to_string(p);
      });
    }
  }
  return out;
}

CondenseStage condense_crosses(const Element& g, int spacing, int block_count) {
  const ModelPtr& model = g.model();
  const int width = spacing * block_count;
  if (width >= model->min_dim()) {
    throw PreconditionError("condensing needs N*M = " + std::to_string(width) + " < n_1 = " +
                            std::to_string(model->min_dim()));
  }
  for (const auto& p : model->all_points()) {
    const ComplexMatrix v = eval_element(g, p);
    for (int k : block_starts_at(*model, p)) {
      for (int z : arithmetic(k, spacing, block_count)) {
        if (!has_zero_cross(v, z)) {
          throw PreconditionError("no zero cross at " + std::to_string(z) + " (block start " +
                                  std::to_string(k) + ") at " + to_string(p));
        }
      }
      if (!has_block_point(v, k)) {
        throw PreconditionError("no block point at " + std::to_string(k) + " at " + to_string(p));
      }
    }
  }
  const Element theta = build_indicator(model, width, {0});
  const CondensePath path(width, arithmetic(1, spacing, block_count));

  CondenseStage out{g, g, {}};
  Checks checks(out.predicates);
  auto formula = [&](const PointRef& x) {
    const auto th = diagonal_of(eval_element(theta, x));
    const int n = static_cast<int>(th.size());
    DenseMatrix v = DenseMatrix::Identity(n, n);
    for (int k = 1; k + width - 1 <= n; ++k) {
      const double t = th[static_cast<std::size_t>(k - 1)];
      if (t == 0.0) continue;
      v = v * embed_block(n, k, path(t)).dense();
    }
    return ComplexMatrix(std::move(v));
  };
  out.v3 = unitary_from_formula(model, formula, checks);
  out.result = out.v3 * g * out.v3.adjoint();
  require_crosses(out.result, [&](int k) { return arithmetic(k, 1, block_count); },
                  "consecutive_crosses", checks);
  for (const auto& p : model->all_points()) {
    const int before = diagonal_radius(eval_element(g, p));
    const int after = diagonal_radius(eval_element(out.result, p));
    checks.require("radius_growth_at_most_2", after <= before + 2, [&] {
      return "radius " + std::to_string(before) + " -> " + std::to_string(after) + " at " +
             to_string(p);
    });
  }
  return out;
}

TriangulateStage triangulate(const Element& g, int block_count) {
  const ModelPtr& model = g.model();
  if (block_count >= model->min_dim()) {
    throw PreconditionError("triangulation needs N < n_1");
  }
  for (const auto& p : model->all_points()) {
    const ComplexMatrix v = eval_element(g, p);
    const int r = diagonal_radius(v);
    if (r >= block_count) {
      throw PreconditionError("radius " + std::to_string(r) + " at " + to_string(p) +
                              " is not below N = " + std::to_string(block_count));
    }
    for (int k : block_starts_at(*model, p)) {
      for (int z = k; z < k + block_count; ++z) {
        if (!has_zero_cross(v, z)) {
          throw PreconditionError("no zero cross at " + std::to_string(z) + " at " + to_string(p));
        }
      }
    }
  }
  const Element theta = build_indicator(model, block_count, {0});
  TriangulateStage out{g, g, {}};
  Checks checks(out.predicates);
  auto formula = [&](const PointRef& x) {
    return v_n(ThetaVector(diagonal_of(eval_element(theta, x))), block_count);
  };
  out.v4 = unitary_from_formula(model, formula, checks);
  out.t = g * out.v4;
  for (const auto& p : model->all_points()) {
    const ComplexMatrix t = eval_element(out.t, p);
    checks.require("strictly_lower", is_strictly_lower_triangular(t, kPathAtol),
                   [&] { return "not strictly lower at " + to_string(p); });
    const double scale = std::max(1.0, t.max_abs_entry());
    const double residual = t.power(t.dim()).max_abs_entry();
    checks.require("nilpotent", residual <= kPathAtol * t.dim() * std::pow(scale, t.dim()),
                   [&] { return "T^n residual " + std::to_string(residual) + " at " + to_string(p); });
  }
  return out;
}

Element rordam_invert(const Element& t, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("the scalar shift must be positive");
  return t + Complex(delta) * Element::unit(t.model());
}

bool PipelineCertificate::predicates_pass() const {
  for (const auto& s : stages)
    for (const auto& [name, r] : s.predicates)
      if (!r.pass) return false;
  return true;
}

bool PipelineCertificate::passes() const {
  return total_distance < epsilon && min_singular_value > 0.0 && predicates_pass();
}

PipelineResult approximate_by_invertible(const CylinderChain& chain, int j, const Element& a,
                                         double epsilon, const PipelineOptions& options) {
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (!(options.delta_fraction > 0.0 && options.delta_fraction < 0.5)) {
    throw PreconditionError("delta fraction must lie in (0, 1/2)");
  }
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  PipelineCertificate cert;
  cert.input_id = options.input_id;
  cert.epsilon = epsilon;
  cert.model_in = j;

  if (is_invertible(a, options.invertibility_tol)) {
    cert.model_out = j;
    cert.min_singular_value = min_singular_value(a);
    StageRecord rec{"invertible_input", {}, 0.0, {}};
    rec.predicates["invertible"] = {true, ""};
    cert.stages.push_back(std::move(rec));
    cert.runtime_ms = elapsed_ms();
    return {a, std::move(cert)};
  }

  const double quarter = epsilon / 4.0;
  ZeroCrossStage zc = make_zero_cross(a, quarter);
  cert.stages.push_back({"zero_cross", {"vL", "vR"}, zc.distance, zc.predicates});

  const int r = chain.model(j)->max_dim();
  const auto simple = check_simplicity_condition(chain.maps, j, zc.u);
  if (!simple.holds) {
    throw DomainError("simplicity condition fails: eigenvalue lists never all meet U");
  }
  const int m = 2 * chain.model(*simple.j)->max_dim();
  const int n = options.block_count > 0 ? options.block_count : r + m + 3;
  cert.r = r;
  cert.m = m;
  cert.n = n;

  PropagateStage prop = propagate_crosses(chain, j, zc, n);
  cert.model_out = prop.j_target;
  cert.stages.push_back({"propagate", {"V1", "V2"}, 0.0, prop.predicates});

  if (!(n > r + m + 2)) {
    throw PreconditionError("parameter discipline requires N > R + M + 2 (N = " +
                            std::to_string(n) + ", R = " + std::to_string(r) + ", M = " +
                            std::to_string(m) + ")");
  }
  OpenBlockStage open = open_block_points(prop.g, quarter);
  cert.stages.push_back({"open_block_points", {}, open.distance, open.predicates});

  CondenseStage cond = condense_crosses(open.result, m, n);
  cert.stages.push_back({"condense", {"V3"}, 0.0, cond.predicates});

  TriangulateStage tri = triangulate(cond.result, n);
  cert.stages.push_back({"triangulate", {"V4"}, 0.0, tri.predicates});

  cert.delta = epsilon * options.delta_fraction;
  const Element shifted = rordam_invert(tri.t, cert.delta);
  StageRecord rordam{"scalar_shift", {}, cert.delta, {}};

  const Element output =
      prop.v1.adjoint() * cond.v3.adjoint() * shifted * tri.v4.adjoint() * cond.v3 * prop.v2.adjoint();
  const Element target = apply_diagonal_map(chain_map(chain.maps, j, prop.j_target), a);

  for (const auto& s : cert.stages) cert.stage_distance_sum += s.distance;
  cert.stage_distance_sum += cert.delta;
  cert.total_distance = norm_dist(target, output);
  // Unitary sandwiches preserve singular values, so the triangular factor
  // certifies the output.
  cert.min_singular_value = std::numeric_limits<double>::infinity();
  for (const auto& p : shifted.model()->all_points()) {
    cert.min_singular_value =
        std::min(cert.min_singular_value, triangular_min_singular_value(eval_element(shifted, p)));
  }

  Checks checks(rordam.predicates);
  checks.require("distance_below_epsilon", cert.total_distance < epsilon,
                 [&] { return "distance " + std::to_string(cert.total_distance); });
  checks.require("distance_within_stage_sum", cert.total_distance <= cert.stage_distance_sum + 1e-9,
                 [&] { return "distance exceeds the sum of stage distances"; });
  checks.require("invertible", cert.min_singular_value > 0.0, [&] { return "singular output"; });
  for (const auto& p : output.model()->all_points()) {
    const double lhs = min_singular_value(eval_element(output, p));
    const double rhs = triangular_min_singular_value(eval_element(shifted, p));
    checks.require("unitary_sandwich", std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs),
                   [&] { return "singular values moved at " + to_string(p); });
  }
  cert.stages.push_back(std::move(rordam));
  cert.runtime_ms = elapsed_ms();
  return {output, std::move(cert)};
}

}  // namespace dshlab
