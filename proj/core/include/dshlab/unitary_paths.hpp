#pragma once

// Homotopies of unitaries between permutation matrices, and the
// conjugations built from them that move zero crosses around.
//
// All products are accumulated left to right in the listed factor order,
// and conjugation is V A V*, so the rightmost factor acts on A first.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dshlab/matrix.hpp"

namespace dshlab {

/// Identifies the path u_(k1 k2)(t) in M_n.
struct TranspositionPathSpec {
  int k1 = 1;
  int k2 = 2;
  int n = 2;

  void validate() const;
};

/// Core entries of the transposition path: [[diag, off], [off, diag]].
/// diag(t) = e^{-i pi t/2} cos(pi t/2), off(t) = i e^{-i pi t/2} sin(pi t/2).
struct TranspositionProfile {
  Complex diag;
  Complex off;
};
TranspositionProfile transposition_profile(double t);

ComplexMatrix u_transposition(const TranspositionPathSpec& spec, double t);
/// Same path for an unordered pair; a == b yields the identity.
ComplexMatrix swap_path(int n, int a, int b, double t);

/// Product of transpositions (k-N+1  m-N+1) ... (k m): swaps the N entries
/// ending at k with the N entries ending at m.
Permutation eta_permutation(int n, int k, int m, int block);
/// u_(k-N+1 m-N+1)(t) ... u_(k m)(t) in M_n.
ComplexMatrix eta_path_between(int n, int k, int m, int block, double t);
/// eta_path_between(n, k, n, N, t): exchanges the N entries ending at k with the last N.
ComplexMatrix eta_path(int k, int n, int block, double t);

/// A vector in [0,1]^n with 1-based access.
class ThetaVector {
 public:
  explicit ThetaVector(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double at(int k) const { return values_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<double>& values() const { return values_; }
  ThetaVector slice(int first, int last) const;

  /// Describes the first violated triangulation constraint for block size N
  /// (first entry 1, last N entries 0, at most one nonzero among any N
  /// consecutive entries), or nullopt.
  std::optional<std::string> triangulation_violation(int block) const;

 private:
  std::vector<double> values_;
};

struct Conjugation {
  ComplexMatrix unitary;
  ComplexMatrix result;
};

/// u_(k k+1)(p_1) ... u_(k k+M-1)(p_{M-1}) with p_a = params[a-1].
ComplexMatrix gather_window_unitary(int n, int k, std::span<const double> params);

/// Rotates the zero cross marked by delta into position k.
Conjugation gather_once(const ComplexMatrix& a, int k, const ThetaVector& delta, int window,
                        double atol = kStructuralAtol);
/// Applies gather_once at every k in ks (spaced at least `window` apart).
Conjugation gather_multi(const ComplexMatrix& a, const ThetaVector& delta, std::span<const int> ks,
                         int window, double atol = kStructuralAtol);

/// Piecewise-linear ramp: 0 for theta <= (i-1)/j, 1 for theta >= i/j.
double ramp(int i, int j, double theta);
/// u_(i i+1)(ramp(j-i, j-i)) ... u_(j-1 j)(ramp(1, j-i)): slides position j to i.
ComplexMatrix adjacent_sweep(int n, int i, int j, double theta);

/// Unitary path moving zero crosses at zs into positions 1..m.
class CondensePath {
 public:
  CondensePath(int n, std::vector<int> zs);

  int dim() const { return n_; }
  const std::vector<int>& positions() const { return zs_; }
  ComplexMatrix operator()(double theta) const;

 private:
  int n_;
  std::vector<int> zs_;
};

CondensePath condense_path(int n, std::vector<int> zs);

/// U[gamma_{1,n}]^N * prod_{k=N}^{n-1} u_{eta_{k,n}}(theta_{k+1}).
ComplexMatrix v_n(const ThetaVector& theta, int block);
/// Same product without validating theta.
ComplexMatrix v_n_unchecked(const ThetaVector& theta, int block);

/// Returns a * v_n(theta); throws PreconditionError naming the witness if the
/// radius or zero-cross hypotheses fail or the product is not strictly lower.
ComplexMatrix triangulate_check(const ComplexMatrix& a, const ThetaVector& theta, int block,
                                double atol = kPathAtol);

}  // namespace dshlab
