#include "dshlab/unitary_paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dshlab/errors.hpp"

namespace dshlab {

namespace {

// Right-multiplies x by the swap path on columns a, b (1-based, a != b).
void right_apply_swap(DenseMatrix& x, int a, int b, double t) {
  if (t == 0.0 || a == b) return;
  const auto [d, o] = transposition_profile(t);
  const Eigen::VectorXcd ca = x.col(a - 1);
  const Eigen::VectorXcd cb = x.col(b - 1);
  x.col(a - 1) = d * ca + o * cb;
  x.col(b - 1) = o * ca + d * cb;
}

void require_theta_size(const ThetaVector& v, int n, const char* what) {
  if (v.size() != n) {
    throw PreconditionError(std::string(what) + ": vector has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(n));
  }
}

}  // namespace

void TranspositionPathSpec::validate() const {
  if (!(1 <= k1 && k1 < k2 && k2 <= n)) {
    throw PreconditionError("transposition path needs 1 <= k1 < k2 <= n, got (" +
                            std::to_string(k1) + ", " + std::to_string(k2) + ") in M_" +
                            std::to_string(n));
  }
}

TranspositionProfile transposition_profile(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw PreconditionError("path parameter " + std::to_string(t) + " outside [0,1]");
  }
  if (t == 0.0) return {1.0, 0.0};
  if (t == 1.0) return {0.0, 1.0};
  const double half = std::numbers::pi * t / 2.0;
  const Complex phase = std::polar(1.0, -half);
  return {phase * std::cos(half), Complex(0.0, 1.0) * phase * std::sin(half)};
}

ComplexMatrix u_transposition(const TranspositionPathSpec& spec, double t) {
  spec.validate();
  const auto [d, o] = transposition_profile(t);
  DenseMatrix m = DenseMatrix::Identity(spec.n, spec.n);
  m(spec.k1 - 1, spec.k1 - 1) = d;
  m(spec.k2 - 1, spec.k2 - 1) = d;
  m(spec.k1 - 1, spec.k2 - 1) = o;
  m(spec.k2 - 1, spec.k1 - 1) = o;
  return ComplexMatrix(std::move(m));
}

ComplexMatrix swap_path(int n, int a, int b, double t) {
  if (a == b) {
    transposition_profile(t);
    if (a < 1 || a > n) throw std::out_of_range("swap_path index");
    return ComplexMatrix::identity(n);
  }
  return u_transposition({std::min(a, b), std::max(a, b), n}, t);
}

Permutation eta_permutation(int n, int k, int m, int block) {
  if (block < 1 || k < block || m < block || k > n || m > n) {
    throw PreconditionError("eta(" + std::to_string(k) + ", " + std::to_string(m) +
                            ") with block " + std::to_string(block) + " is not defined in S_" +
                            std::to_string(n));
  }
  Permutation p = Permutation::identity(n);
  for (int j = 0; j < block; ++j) {
    p = p * Permutation::transposition(n, k - block + 1 + j, m - block + 1 + j);
  }
  return p;
}

ComplexMatrix eta_path_between(int n, int k, int m, int block, double t) {
  eta_permutation(n, k, m, block);  // index validation
  transposition_profile(t);
  DenseMatrix x = DenseMatrix::Identity(n, n);
  for (int j = 0; j < block; ++j) right_apply_swap(x, k - block + 1 + j, m - block + 1 + j, t);
  return ComplexMatrix(std::move(x));
}

ComplexMatrix eta_path(int k, int n, int block, double t) {
  return eta_path_between(n, k, n, block, t);
}

ThetaVector::ThetaVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw PreconditionError("empty parameter vector");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      throw PreconditionError("parameter entry " + std::to_string(i + 1) + " = " +
                              std::to_string(values_[i]) + " outside [0,1]");
    }
  }
}

ThetaVector ThetaVector::slice(int first, int last) const {
  if (first < 1 || last > size() || first > last) throw std::out_of_range("ThetaVector::slice");
  return ThetaVector(std::vector<double>(values_.begin() + (first - 1), values_.begin() + last));
}

std::optional<std::string> ThetaVector::triangulation_violation(int block) const {
  const int n = size();
  if (block < 1 || block >= n) {
    return "block size " + std::to_string(block) + " must satisfy 1 <= N < n = " +
           std::to_string(n);
  }
  if (at(1) != 1.0) return std::string("first entry is not 1");
  for (int k = n - block + 1; k <= n; ++k) {
    if (at(k) != 0.0) {
      return "entry " + std::to_string(k) + " lies in the last " + std::to_string(block) +
             " entries but is nonzero";
    }
  }
  int last_nonzero = -block;
  for (int k = 1; k <= n; ++k) {
    if (at(k) == 0.0) continue;
    if (k - last_nonzero < block) {
      return "entries " + std::to_string(last_nonzero) + " and " + std::to_string(k) +
             " are both nonzero within " + std::to_string(block) + " consecutive entries";
    }
    last_nonzero = k;
  }
  return std::nullopt;
}

ComplexMatrix gather_window_unitary(int n, int k, std::span<const double> params) {
  const int window = static_cast<int>(params.size()) + 1;
  if (k < 1 || k + window - 1 > n) {
    throw PreconditionError("gather window [" + std::to_string(k) + ", " +
                            std::to_string(k + window - 1) + "] exceeds dimension " +
                            std::to_string(n));
  }
  DenseMatrix x = DenseMatrix::Identity(n, n);
  for (int a = 1; a < window; ++a) {
    right_apply_swap(x, k, k + a, params[static_cast<std::size_t>(a - 1)]);
  }
  return ComplexMatrix(std::move(x));
}

namespace {

void check_delta_crosses(const ComplexMatrix& a, const ThetaVector& delta, double atol) {
  require_theta_size(delta, a.dim(), "gather");
  for (int i = 1; i <= a.dim(); ++i) {
    if (delta.at(i) > 0.0 && !has_zero_cross(a, i, atol)) {
      throw PreconditionError("delta is positive at index " + std::to_string(i) +
                              " but the matrix has no zero cross there");
    }
  }
}

ComplexMatrix window_unitary(int n, int k, const ThetaVector& delta, int window) {
  std::vector<double> params;
  for (int a = 1; a < window; ++a) params.push_back(delta.at(k + a));
  return gather_window_unitary(n, k, params);
}

void check_window(const ThetaVector& delta, int k, int window, int n) {
  if (window < 1 || k < 1 || k + window - 1 > n) {
    throw PreconditionError("window starting at " + std::to_string(k) + " of width " +
                            std::to_string(window) + " does not fit in dimension " +
                            std::to_string(n));
  }
  for (int i = k; i < k + window; ++i) {
    if (delta.at(i) == 1.0) return;
  }
  throw PreconditionError("no delta entry equals 1 in the window starting at index " +
                          std::to_string(k));
}

}  // namespace

Conjugation gather_once(const ComplexMatrix& a, int k, const ThetaVector& delta, int window,
                        double atol) {
  check_delta_crosses(a, delta, atol);
  check_window(delta, k, window, a.dim());
  ComplexMatrix v = window_unitary(a.dim(), k, delta, window);
  ComplexMatrix b = v * a * v.adjoint();
  return {std::move(v), std::move(b)};
}

Conjugation gather_multi(const ComplexMatrix& a, const ThetaVector& delta, std::span<const int> ks,
                         int window, double atol) {
  check_delta_crosses(a, delta, atol);
  for (std::size_t j = 0; j < ks.size(); ++j) {
    check_window(delta, ks[j], window, a.dim());
    if (j > 0 && ks[j] - ks[j - 1] < window) {
      throw PreconditionError("window starts " + std::to_string(ks[j - 1]) + " and " +
                              std::to_string(ks[j]) + " are closer than " +
                              std::to_string(window));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(a.dim());
  for (int k : ks) v = window_unitary(a.dim(), k, delta, window) * v;
  ComplexMatrix b = v * a * v.adjoint();
  return {std::move(v), std::move(b)};
}

double ramp(int i, int j, double theta) {
  if (i < 1 || j < i) throw PreconditionError("ramp needs 0 < i <= j");
  return std::clamp(theta * j - (i - 1), 0.0, 1.0);
}

ComplexMatrix adjacent_sweep(int n, int i, int j, double theta) {
  if (i < 1 || j < i || j > n) throw PreconditionError("adjacent_sweep needs 1 <= i <= j <= n");
  DenseMatrix x = DenseMatrix::Identity(n, n);
  const int span = j - i;
  for (int m = i; m < j; ++m) right_apply_swap(x, m, m + 1, ramp(j - m, span, theta));
  return ComplexMatrix(std::move(x));
}

CondensePath::CondensePath(int n, std::vector<int> zs) : n_(n), zs_(std::move(zs)) {
  for (std::size_t t = 0; t < zs_.size(); ++t) {
    if (zs_[t] < 1 || zs_[t] > n_ || (t > 0 && zs_[t] <= zs_[t - 1])) {
      throw PreconditionError("condense positions must be strictly increasing within 1..n");
    }
  }
}

ComplexMatrix CondensePath::operator()(double theta) const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw PreconditionError("condense parameter outside [0,1]");
  // The sweep that moves first in time is the rightmost factor, so it acts
  // first under conjugation; each later sweep pushes earlier crosses down by one.
  const int m = static_cast<int>(zs_.size());
  DenseMatrix v = DenseMatrix::Identity(n_, n_);
  for (int t = m; t >= 1; --t) {
    v = v * adjacent_sweep(n_, 1, zs_[static_cast<std::size_t>(t - 1)], ramp(t, m, theta)).dense();
  }
  return ComplexMatrix(std::move(v));
}

CondensePath condense_path(int n, std::vector<int> zs) { return CondensePath(n, std::move(zs)); }

ComplexMatrix v_n_unchecked(const ThetaVector& theta, int block) {
  const int n = theta.size();
  DenseMatrix x = perm_matrix(Permutation::cycle(n, 1, n).power(block)).dense();
  for (int k = block; k <= n - 1; ++k) {
    const double t = theta.at(k + 1);
    if (t == 0.0) continue;
    for (int j = 0; j < block; ++j) right_apply_swap(x, k - block + 1 + j, n - block + 1 + j, t);
  }
  return ComplexMatrix(std::move(x));
}

ComplexMatrix v_n(const ThetaVector& theta, int block) {
  if (auto why = theta.triangulation_violation(block)) {
    throw PreconditionError("invalid triangulation parameters: " + *why);
  }
  return v_n_unchecked(theta, block);
}

ComplexMatrix triangulate_check(const ComplexMatrix& a, const ThetaVector& theta, int block,
                                double atol) {
  require_theta_size(theta, a.dim(), "triangulate");
  const int r = diagonal_radius(a, atol);
  if (r > block) {
    throw PreconditionError("diagonal radius " + std::to_string(r) + " exceeds block size " +
                            std::to_string(block));
  }
  for (int k = 1; k <= a.dim(); ++k) {
    if (theta.at(k) <= 0.0) continue;
    for (int z = k; z < k + block && z <= a.dim(); ++z) {
      if (!has_zero_cross(a, z, atol)) {
        throw PreconditionError("theta is positive at " + std::to_string(k) +
                                " but there is no zero cross at " + std::to_string(z));
      }
    }
  }
  ComplexMatrix t = a * v_n(theta, block);
  if (!is_strictly_lower_triangular(t, atol)) {
    throw PreconditionError("product is not strictly lower triangular");
  }
  return t;
}

}  // namespace dshlab
