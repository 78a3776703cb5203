#include "dshlab/dsh_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dshlab/errors.hpp"

namespace dshlab {

std::string to_string(const PointRef& p) { return std::to_string(p.level) + "/" + p.point; }

FiniteDshModel::FiniteDshModel(std::vector<Level> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw PreconditionError("a model needs at least one level");
  index_.resize(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    if (levels_[l].dim < 1) {
      throw PreconditionError("level " + std::to_string(l + 1) + " has non-positive dimension");
    }
    for (std::size_t j = 0; j < levels_[l].points.size(); ++j) {
      const auto& id = levels_[l].points[j].id;
      if (id.empty() || id.find('/') != std::string::npos) {
        throw PreconditionError("point id '" + id + "' must be nonempty and free of '/'");
      }
      if (!index_[l].emplace(id, j).second) {
        throw PreconditionError("duplicate point id '" + id + "' on level " +
                                std::to_string(l + 1));
      }
    }
  }
}

int FiniteDshModel::dim(int level) const {
  if (level < 1 || level > level_count()) {
    throw DomainError("level " + std::to_string(level) + " does not exist");
  }
  return levels_[static_cast<std::size_t>(level - 1)].dim;
}

int FiniteDshModel::max_dim() const {
  int d = 0;
  for (const auto& l : levels_) d = std::max(d, l.dim);
  return d;
}

int FiniteDshModel::min_dim() const {
  int d = levels_.front().dim;
  for (const auto& l : levels_) d = std::min(d, l.dim);
  return d;
}

bool FiniteDshModel::contains(const PointRef& p) const {
  return p.level >= 1 && p.level <= level_count() &&
         index_[static_cast<std::size_t>(p.level - 1)].contains(p.point);
}

const PointSpec& FiniteDshModel::point(const PointRef& p) const {
  if (!contains(p)) throw DomainError("dangling point reference " + to_string(p));
  const auto l = static_cast<std::size_t>(p.level - 1);
  return levels_[l].points[index_[l].at(p.point)];
}

std::vector<PointRef> FiniteDshModel::all_points() const {
  std::vector<PointRef> out;
  for (int l = 1; l <= level_count(); ++l) {
    for (const auto& s : levels_[static_cast<std::size_t>(l - 1)].points) out.push_back({l, s.id});
  }
  return out;
}

std::vector<PointRef> FiniteDshModel::free_points() const {
  std::vector<PointRef> out;
  for (int l = 1; l <= level_count(); ++l) {
    auto f = free_points(l);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::vector<PointRef> FiniteDshModel::free_points(int level) const {
  std::vector<PointRef> out;
  for (const auto& s : levels_.at(static_cast<std::size_t>(level - 1)).points) {
    if (!s.glued) out.push_back({level, s.id});
  }
  return out;
}

std::vector<PointRef> FiniteDshModel::leaves(const PointRef& p) const {
  const auto& spec = point(p);
  if (!spec.glued) return {p};
  std::vector<PointRef> out;
  for (const auto& q : spec.gluing) {
    if (q.level >= p.level) {
      throw DomainError("gluing of " + to_string(p) + " references " + to_string(q) +
                        " on a level that is not lower");
    }
    auto sub = leaves(q);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

ValidationReport validate_model(const FiniteDshModel& m) {
  ValidationReport r;
  auto& v = r.violations;
  for (int l = 1; l <= m.level_count(); ++l) {
    const Level& level = m.levels()[static_cast<std::size_t>(l - 1)];
    if (l > 1 && level.dim < m.dim(l - 1)) {
      v.push_back("level " + std::to_string(l) + " has dimension " + std::to_string(level.dim) +
                  " below level " + std::to_string(l - 1));
    }
    for (const auto& s : level.points) {
      const PointRef self{l, s.id};
      if (!s.glued) {
        if (!s.gluing.empty()) v.push_back("free point " + to_string(self) + " has a gluing list");
        continue;
      }
      if (l == 1) {
        v.push_back("glued point " + to_string(self) + " on level 1");
        continue;
      }
      if (s.gluing.empty()) v.push_back("glued point " + to_string(self) + " has an empty list");
      int total = 0;
      bool dangling = false;
      for (const auto& q : s.gluing) {
        if (!m.contains(q)) {
          v.push_back(to_string(self) + " references missing point " + to_string(q));
          dangling = true;
          continue;
        }
        if (q.level >= l) {
          v.push_back(to_string(self) + " references " + to_string(q) + " on a level >= " +
                      std::to_string(l));
          dangling = true;
          continue;
        }
        if (m.point(q).glued) {
          v.push_back(to_string(self) + " references glued point " + to_string(q) +
                      " instead of free points");
        }
        total += m.dim(q.level);
      }
      if (!dangling && total != level.dim) {
        v.push_back("gluing list of " + to_string(self) + " has total dimension " +
                    std::to_string(total) + ", expected " + std::to_string(level.dim));
      }
    }
  }
  return r;
}

Element::Element(ModelPtr model, std::map<PointRef, ComplexMatrix> values)
    : model_(std::move(model)), values_(std::move(values)) {
  if (!model_) throw PreconditionError("element without a model");
  for (const auto& [p, a] : values_) {
    if (!model_->contains(p)) throw PreconditionError("value given at unknown point " + to_string(p));
    if (model_->point(p).glued) {
      throw PreconditionError("value given at glued point " + to_string(p));
    }
    if (a.dim() != model_->dim(p.level)) {
      throw PreconditionError("value at " + to_string(p) + " has size " + std::to_string(a.dim()) +
                              ", expected " + std::to_string(model_->dim(p.level)));
    }
  }
  for (const auto& p : model_->free_points()) {
    if (!values_.contains(p)) throw PreconditionError("missing value at free point " + to_string(p));
  }
}

Element Element::zero(ModelPtr model) {
  auto m = model;
  return from_function(std::move(model),
                       [&](const PointRef& p) { return ComplexMatrix::zero(m->dim(p.level)); });
}

Element Element::unit(ModelPtr model) {
  auto m = model;
  return from_function(std::move(model),
                       [&](const PointRef& p) { return ComplexMatrix::identity(m->dim(p.level)); });
}

const ComplexMatrix& Element::value(const PointRef& p) const {
  auto it = values_.find(p);
  if (it == values_.end()) throw DomainError(to_string(p) + " is not a free point of the model");
  return it->second;
}

namespace {

template <class Op>
Element combine(const Element& a, const Element& b, Op op) {
  if (a.model() != b.model() && !(*a.model() == *b.model())) {
    throw PreconditionError("elements belong to different models");
  }
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& [p, x] : a.values()) out.emplace(p, op(x, b.value(p)));
  return Element(a.model(), std::move(out));
}

}  // namespace

Element Element::adjoint() const {
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& [p, x] : values_) out.emplace(p, x.adjoint());
  return Element(model_, std::move(out));
}

Element operator+(const Element& a, const Element& b) {
  return combine(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x + y; });
}
Element operator-(const Element& a, const Element& b) {
  return combine(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x - y; });
}
Element operator*(const Element& a, const Element& b) {
  return combine(a, b, [](const ComplexMatrix& x, const ComplexMatrix& y) { return x * y; });
}
Element operator*(Complex s, const Element& a) {
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& [p, x] : a.values()) out.emplace(p, s * x);
  return Element(a.model(), std::move(out));
}

ComplexMatrix eval_element(const Element& e, const PointRef& p) {
  const auto& spec = e.model()->point(p);
  if (!spec.glued) return e.value(p);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(spec.gluing.size());
  for (const auto& q : spec.gluing) blocks.push_back(eval_element(e, q));
  return block_diagonal(blocks);
}

DiagonalMap::DiagonalMap(ModelPtr source, ModelPtr target,
                         std::map<PointRef, std::vector<PointRef>> lists)
    : source_(std::move(source)), target_(std::move(target)), lists_(std::move(lists)) {
  if (!source_ || !target_) throw PreconditionError("diagonal map needs both models");
  for (const auto& p : target_->free_points()) {
    auto it = lists_.find(p);
    if (it == lists_.end()) throw PreconditionError("no eigenvalue list for " + to_string(p));
    int total = 0;
    for (const auto& q : it->second) {
      if (!source_->contains(q)) {
        throw PreconditionError("list of " + to_string(p) + " names unknown source point " +
                                to_string(q));
      }
      total += source_->dim(q.level);
    }
    if (total != target_->dim(p.level)) {
      throw PreconditionError("list of " + to_string(p) + " has total dimension " +
                              std::to_string(total) + ", expected " +
                              std::to_string(target_->dim(p.level)));
    }
  }
  for (const auto& [p, l] : lists_) {
    if (!target_->contains(p) || target_->point(p).glued) {
      throw PreconditionError("eigenvalue list given for non-free target point " + to_string(p));
    }
  }
}

std::vector<PointRef> DiagonalMap::eigenvalue_list(const PointRef& target_point) const {
  std::vector<PointRef> out;
  for (const auto& leaf : target_->leaves(target_point)) {
    const auto& l = lists_.at(leaf);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

DiagonalMap identity_map(const ModelPtr& model) {
  std::map<PointRef, std::vector<PointRef>> lists;
  for (const auto& p : model->free_points()) lists[p] = {p};
  return DiagonalMap(model, model, std::move(lists));
}

Element apply_diagonal_map(const DiagonalMap& d, const Element& e) {
  if (e.model() != d.source() && !(*e.model() == *d.source())) {
    throw PreconditionError("element does not belong to the map's source model");
  }
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& [p, list] : d.lists()) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(list.size());
    for (const auto& q : list) blocks.push_back(eval_element(e, q));
    out.emplace(p, block_diagonal(blocks));
  }
  return Element(d.target(), std::move(out));
}

DiagonalMap compose_diagonal_maps(const DiagonalMap& d2, const DiagonalMap& d1) {
  if (d1.target() != d2.source() && !(*d1.target() == *d2.source())) {
    throw PreconditionError("maps are not composable: intermediate models differ");
  }
  std::map<PointRef, std::vector<PointRef>> lists;
  for (const auto& [p, list] : d2.lists()) {
    auto& out = lists[p];
    for (const auto& q : list) {
      auto sub = d1.eigenvalue_list(q);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return DiagonalMap(d1.source(), d2.target(), std::move(lists));
}

std::vector<int> block_starts_at(const FiniteDshModel& m, const PointRef& p) {
  std::vector<int> starts;
  int offset = 0;
  for (const auto& leaf : m.leaves(p)) {
    starts.push_back(offset + 1);
    offset += m.dim(leaf.level);
  }
  return starts;
}

BlockStartTable block_starts(const FiniteDshModel& m) {
  BlockStartTable t;
  for (const auto& p : m.all_points()) t.emplace(p, block_starts_at(m, p));
  return t;
}

Element witness_no_block_point(const ModelPtr& m, const PointRef& p, int k) {
  const int n = m->dim(p.level);
  if (k < 1 || k > n) throw PreconditionError("position " + std::to_string(k) + " out of range");
  int offset = 0;
  for (const auto& leaf : m->leaves(p)) {
    const int d = m->dim(leaf.level);
    if (k == offset + 1) {
      throw DomainError(std::to_string(k) + " is a block start at " + to_string(p));
    }
    if (k <= offset + d) {
      const int local = k - offset;
      return Element::from_function(m, [&](const PointRef& q) {
        DenseMatrix a = DenseMatrix::Zero(m->dim(q.level), m->dim(q.level));
        if (q == leaf) a(local - 2, local - 1) = 1.0;
        return ComplexMatrix(std::move(a));
      });
    }
    offset += d;
  }
  throw DomainError("position " + std::to_string(k) + " not covered at " + to_string(p));
}

FiniteDshModel restrict_model(const FiniteDshModel& m, const std::set<PointRef>& keep) {
  for (const auto& p : keep) {
    if (!m.contains(p)) throw PreconditionError("cannot keep unknown point " + to_string(p));
  }
  std::vector<Level> levels;
  for (int l = 1; l <= m.level_count(); ++l) {
    Level out{m.dim(l), {}};
    for (const auto& s : m.levels()[static_cast<std::size_t>(l - 1)].points) {
      if (!keep.contains({l, s.id})) continue;
      for (const auto& q : s.gluing) {
        if (!keep.contains(q)) {
          throw PreconditionError("kept point " + to_string({l, s.id}) + " references dropped " +
                                  to_string(q));
        }
      }
      out.points.push_back(s);
    }
    levels.push_back(std::move(out));
  }
  return FiniteDshModel(std::move(levels));
}

Element restrict_element(const Element& e, ModelPtr restricted) {
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& p : restricted->free_points()) out.emplace(p, e.value(p));
  return Element(std::move(restricted), std::move(out));
}

Element build_indicator(const ModelPtr& m, int block, const std::vector<int>& offsets,
                        const ForbiddenFlags& forbidden) {
  const int n1 = m->dim(1);
  if (block < 1 || block >= n1) {
    throw PreconditionError("indicator spacing M = " + std::to_string(block) +
                            " must satisfy 1 <= M < n_1 = " + std::to_string(n1));
  }
  if (offsets.empty()) throw PreconditionError("indicator needs at least one offset");
  if (offsets.front() < 0 || offsets.back() > n1 - block) {
    throw PreconditionError("offsets must lie in [0, n_1 - M]");
  }
  for (std::size_t t = 1; t < offsets.size(); ++t) {
    if (offsets[t] - offsets[t - 1] < block) {
      throw PreconditionError("offsets " + std::to_string(offsets[t - 1]) + " and " +
                              std::to_string(offsets[t]) + " are closer than M");
    }
  }
  // Every free point has the single block start 1, so its value is the
  // characteristic vector of 1 + K; glued values follow by assembly.
  Element theta = Element::from_function(m, [&](const PointRef& p) {
    std::vector<double> diag(static_cast<std::size_t>(m->dim(p.level)), 0.0);
    for (int k : offsets) diag[static_cast<std::size_t>(k)] = 1.0;
    return ComplexMatrix::diagonal(std::span<const double>(diag));
  });
  for (const auto& [p, k] : forbidden) {
    const ComplexMatrix v = eval_element(theta, p);
    if (k >= 1 && k <= v.dim() && v(k - 1, k - 1) != 0.0) {
      throw DomainError("forbidden flag at " + to_string(p) + ", position " + std::to_string(k) +
                        " lies on a required block start offset");
    }
  }
  return theta;
}

Element soft_threshold(const Element& e, double delta) {
  if (!(delta >= 0.0)) throw PreconditionError("soft threshold needs delta >= 0");
  std::map<PointRef, ComplexMatrix> out;
  for (const auto& [p, x] : e.values()) {
    DenseMatrix a = x.dense();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double r = std::abs(a(i, j));
        a(i, j) = r <= delta ? Complex(0.0) : a(i, j) * ((r - delta) / r);
      }
    }
    out.emplace(p, ComplexMatrix(std::move(a)));
  }
  return Element(e.model(), std::move(out));
}

SimplicityWitness check_simplicity_condition(const std::vector<DiagonalMap>& chain, int i,
                                             const std::set<PointRef>& u) {
  if (u.empty()) throw PreconditionError("the open set U must be nonempty");
  if (i < 0 || i >= static_cast<int>(chain.size())) return {};
  const ModelPtr& base = chain[static_cast<std::size_t>(i)].source();
  for (const auto& p : u) {
    if (!base->contains(p) || base->point(p).glued) {
      throw PreconditionError(to_string(p) + " is not a free point of model " + std::to_string(i));
    }
  }
  std::optional<DiagonalMap> composed;
  for (int j = i + 1; j <= static_cast<int>(chain.size()); ++j) {
    const auto& step = chain[static_cast<std::size_t>(j - 1)];
    composed = composed ? compose_diagonal_maps(step, *composed) : step;
    bool all_meet = true;
    for (const auto& [p, list] : composed->lists()) {
      bool meets = false;
      for (const auto& q : list) {
        for (const auto& leaf : base->leaves(q)) {
          if (u.contains(leaf)) {
            meets = true;
            break;
          }
        }
        if (meets) break;
      }
      if (!meets) {
        all_meet = false;
        break;
      }
    }
    if (all_meet) return {true, j};
  }
  return {};
}

double norm_dist(const Element& a, const Element& b) {
  double d = 0.0;
  for (const auto& [p, x] : a.values()) d = std::max(d, op_norm(x - b.value(p)));
  return d;
}

double min_singular_value(const Element& e) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& p : e.model()->all_points()) {
    s = std::min(s, min_singular_value(eval_element(e, p)));
  }
  return s;
}

bool is_invertible(const Element& e, double tol) { return min_singular_value(e) > tol; }

}  // namespace dshlab
