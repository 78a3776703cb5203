#pragma once

// Approximating a non-invertible element by invertible ones along an
// inductive chain of tower models: perturb to a zero cross, spread crosses
// periodically by gathering unitaries, open block points, condense the
// crosses, triangulate, then add a small scalar.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dshlab/dsh_model.hpp"
#include "dshlab/dynamics.hpp"

namespace dshlab {

struct CylinderChain {
  std::vector<TowerModel> towers;
  /// maps[j] embeds towers[j] into towers[j+1].
  std::vector<DiagonalMap> maps;

  int size() const { return static_cast<int>(towers.size()); }
  const ModelPtr& model(int j) const { return towers.at(static_cast<std::size_t>(j)).model; }
};

/// `first` followed by successive deeper_base words, `count` bases in total.
std::vector<std::string> deepening_bases(const Substitution& s, const std::string& first,
                                         int count, std::size_t scan_length = 10000);

CylinderChain build_cylinder_chain(const Substitution& s, const std::vector<std::string>& bases,
                                   const TowerOptions& options);

/// Composition of chain maps from model i to model j (identity when i == j).
DiagonalMap chain_map(const std::vector<DiagonalMap>& maps, int i, int j);

/// Highest-level free point whose value has smallest singular value <= tol.
std::optional<PointRef> find_singular_point(const Element& e, double tol);

struct PredicateResult {
  bool pass = true;
  std::string witness;
};

using PredicateMap = std::map<std::string, PredicateResult>;

struct ZeroCrossStage {
  Element perturbed;
  Element left;
  Element right;
  Element delta;
  std::set<PointRef> u;
  double distance = 0.0;
  PredicateMap predicates;
};

/// Perturbs by less than `budget` so that left * e' * right has a zero cross
/// at position 1 on a nonempty set of free points on one level.
ZeroCrossStage make_zero_cross(const Element& e, double budget);

struct PropagateStage {
  int j_simple = 0;
  int j_target = 0;
  int m = 0;
  int r = 0;
  int n = 0;
  Element v1;
  Element v2;
  Element g;
  PredicateMap predicates;
};

/// `block_count` is the number of crosses per block start (N). Picks the
/// first model at or after the simplicity witness with n_1 > N * M.
PropagateStage propagate_crosses(const CylinderChain& chain, int j, const ZeroCrossStage& zc,
                                 int block_count);

struct OpenBlockStage {
  Element result;
  double threshold = 0.0;
  double distance = 0.0;
  PredicateMap predicates;
};

/// Soft threshold with the largest threshold keeping the distance below budget.
OpenBlockStage open_block_points(const Element& g, double budget);

struct CondenseStage {
  Element v3;
  Element result;
  PredicateMap predicates;
};

/// Moves the crosses at k, k+M, ..., k+(N-1)M to k, ..., k+N-1 at every block start k.
CondenseStage condense_crosses(const Element& g, int spacing, int block_count);

struct TriangulateStage {
  Element v4;
  Element t;
  PredicateMap predicates;
};

/// T = g * V4 with V4 built from v_n on the block-start indicator.
TriangulateStage triangulate(const Element& g, int block_count);

Element rordam_invert(const Element& t, double delta);

struct StageRecord {
  std::string name;
  std::vector<std::string> unitary_ids;
  double distance = 0.0;
  PredicateMap predicates;
};

struct PipelineCertificate {
  std::string input_id;
  double epsilon = 0.0;
  int model_in = 0;
  int model_out = 0;
  int r = 0;
  int m = 0;
  int n = 0;
  double delta = 0.0;
  std::vector<StageRecord> stages;
  double stage_distance_sum = 0.0;
  double total_distance = 0.0;
  double min_singular_value = 0.0;
  double runtime_ms = 0.0;

  bool predicates_pass() const;
  /// Distance below epsilon, output invertible, every predicate passing.
  bool passes() const;
};

struct PipelineOptions {
  /// Crosses per block start; 0 selects R + M + 3.
  int block_count = 0;
  /// Scalar added to the triangular part, as a fraction of epsilon.
  double delta_fraction = 0.125;
  /// Elements with smallest singular value above this count as invertible.
  double invertibility_tol = 1e-9;
  std::string input_id = "input";
};

struct PipelineResult {
  Element output;
  PipelineCertificate certificate;
};

PipelineResult approximate_by_invertible(const CylinderChain& chain, int j, const Element& a,
                                         double epsilon, const PipelineOptions& options = {});

}  // namespace dshlab
