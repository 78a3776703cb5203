#pragma once

// Finite-spectrum models of diagonal subhomogeneous algebras.
//
// A model is a list of levels with nondecreasing matrix sizes. Each level
// holds named points; a glued point carries an ordered list of points on
// earlier levels, and an element's value there is the block diagonal of
// the values along that list. Elements therefore only store values at
// free points.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dshlab/matrix.hpp"

namespace dshlab {

using PointId = std::string;

/// A point of a model; level is 1-based.
struct PointRef {
  int level = 1;
  PointId point;

  auto operator<=>(const PointRef&) const = default;
  bool operator==(const PointRef&) const = default;
};

std::string to_string(const PointRef& p);

struct PointSpec {
  PointId id;
  bool glued = false;
  std::vector<PointRef> gluing;

  bool operator==(const PointSpec&) const = default;
};

struct Level {
  int dim = 1;
  std::vector<PointSpec> points;

  bool operator==(const Level&) const = default;
};

class FiniteDshModel {
 public:
  explicit FiniteDshModel(std::vector<Level> levels);

  const std::vector<Level>& levels() const { return levels_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  /// Matrix size n_i of a 1-based level.
  int dim(int level) const;
  int max_dim() const;
  int min_dim() const;

  bool contains(const PointRef& p) const;
  /// Throws DomainError for a dangling reference.
  const PointSpec& point(const PointRef& p) const;
  bool is_free(const PointRef& p) const { return !point(p).glued; }

  std::vector<PointRef> all_points() const;
  std::vector<PointRef> free_points() const;
  std::vector<PointRef> free_points(int level) const;

  /// Free points whose values make up the value at p, in diagonal order.
  std::vector<PointRef> leaves(const PointRef& p) const;

  bool operator==(const FiniteDshModel& other) const { return levels_ == other.levels_; }

 private:
  std::vector<Level> levels_;
  std::vector<std::map<PointId, std::size_t>> index_;
};

using ModelPtr = std::shared_ptr<const FiniteDshModel>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const FiniteDshModel& m);

/// Values at the free points of a model.
class Element {
 public:
  /// Every free point must be present with a matrix of its level's size;
  /// keys naming glued or unknown points are rejected.
  Element(ModelPtr model, std::map<PointRef, ComplexMatrix> values);

  static Element zero(ModelPtr model);
  static Element unit(ModelPtr model);
  template <class Fn>
  static Element from_function(ModelPtr model, Fn&& fn) {
    std::map<PointRef, ComplexMatrix> values;
    for (const auto& p : model->free_points()) values.emplace(p, fn(p));
    return Element(std::move(model), std::move(values));
  }

  const ModelPtr& model() const { return model_; }
  const std::map<PointRef, ComplexMatrix>& values() const { return values_; }
  /// Stored value at a free point.
  const ComplexMatrix& value(const PointRef& p) const;

  Element adjoint() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(Complex s, const Element& a);

 private:
  ModelPtr model_;
  std::map<PointRef, ComplexMatrix> values_;
};

/// Value at any point; glued points assemble the diagonal of their gluing list.
ComplexMatrix eval_element(const Element& e, const PointRef& p);

/// A diagonal homomorphism: each target free point lists the source points
/// whose values fill its diagonal blocks.
class DiagonalMap {
 public:
  DiagonalMap(ModelPtr source, ModelPtr target, std::map<PointRef, std::vector<PointRef>> lists);

  const ModelPtr& source() const { return source_; }
  const ModelPtr& target() const { return target_; }
  const std::map<PointRef, std::vector<PointRef>>& lists() const { return lists_; }
  /// Eigenvalue list of any target point (glued points concatenate their components).
  std::vector<PointRef> eigenvalue_list(const PointRef& target_point) const;

 private:
  ModelPtr source_;
  ModelPtr target_;
  std::map<PointRef, std::vector<PointRef>> lists_;
};

/// Maps every free point to itself; source and target share the model.
DiagonalMap identity_map(const ModelPtr& model);

Element apply_diagonal_map(const DiagonalMap& d, const Element& e);
/// d2 after d1.
DiagonalMap compose_diagonal_maps(const DiagonalMap& d2, const DiagonalMap& d1);

using BlockStartTable = std::map<PointRef, std::vector<int>>;

/// Positions where a new diagonal block begins, for every point.
BlockStartTable block_starts(const FiniteDshModel& m);
std::vector<int> block_starts_at(const FiniteDshModel& m, const PointRef& p);

/// An element whose value at p has no block point at k. Throws DomainError
/// when k is a block start at p.
Element witness_no_block_point(const ModelPtr& m, const PointRef& p, int k);

/// Keeps the listed points. Glued points must be listed to be kept, and
/// every kept glued point must reference kept points only.
FiniteDshModel restrict_model(const FiniteDshModel& m, const std::set<PointRef>& keep);
Element restrict_element(const Element& e, ModelPtr restricted);

/// Per (point, position) flags where the indicator must vanish.
using ForbiddenFlags = std::set<std::pair<PointRef, int>>;

/// Diagonal 0/1 element equal to 1 exactly at k + K_t for every block
/// start k. Throws DomainError when a flag collides with a required 1.
Element build_indicator(const ModelPtr& m, int block, const std::vector<int>& offsets,
                        const ForbiddenFlags& forbidden = {});

/// Entrywise z -> z max(0, |z| - delta) / |z|.
Element soft_threshold(const Element& e, double delta);

struct SimplicityWitness {
  bool holds = false;
  std::optional<int> j;
};

/// Models in a chain are numbered 0..chain.size(); chain[j] maps model j to
/// model j+1. Finds the least j > i such that every free point of model j
/// has a list under the composed map that meets `u` (free points of model i).
SimplicityWitness check_simplicity_condition(const std::vector<DiagonalMap>& chain, int i,
                                             const std::set<PointRef>& u);

/// Max over free points of the operator norm of the difference.
double norm_dist(const Element& a, const Element& b);
/// Smallest singular value over every point of the model.
double min_singular_value(const Element& e);
bool is_invertible(const Element& e, double tol);

}  // namespace dshlab
