#pragma once

// Dense complex matrices and the zero-pattern predicates used throughout
// the library.
//
// Index convention: element access through operator() is 0-based like
// Eigen. Every *position* argument (zero cross at k, block point at k,
// transposition (k1 k2), permutation images) is 1-based, matching the
// usual row/column numbering of matrix units.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dshlab {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

inline constexpr double kStructuralAtol = 1e-12;
inline constexpr double kPathAtol = 1e-9;

/// Square complex matrix with value semantics. Never mutated after
/// construction; every operation returns a fresh matrix.
class ComplexMatrix {
 public:
  /// 1x1 zero.
  ComplexMatrix();
  /// Takes ownership of a square, finite Eigen matrix.
  explicit ComplexMatrix(DenseMatrix values);

  static ComplexMatrix zero(int n);
  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(std::span<const Complex> entries);
  static ComplexMatrix diagonal(std::span<const double> entries);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  int dim() const { return static_cast<int>(values_.rows()); }
  Complex operator()(int row, int col) const { return values_(row, col); }
  const DenseMatrix& dense() const { return values_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix power(int exponent) const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

  /// Entrywise comparison: max |a_ij - b_ij| <= atol. Different sizes compare unequal.
  bool approx_equal(const ComplexMatrix& other, double atol = kStructuralAtol) const;
  /// Exact entrywise equality.
  bool operator==(const ComplexMatrix& other) const;

  double max_abs_entry() const;

 private:
  DenseMatrix values_;
};

/// Max absolute entry of a - b (infinity if shapes differ).
double max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// diag(blocks[0], blocks[1], ...).
ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks);

/// Bijection on {1..n}, stored as its image list.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The transposition (a b); a == b gives the identity.
  static Permutation transposition(int n, int a, int b);
  /// The cycle k -> k+1 -> ... -> m -> k (identity when m <= k).
  static Permutation cycle(int n, int k, int m);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int position) const { return images_.at(static_cast<std::size_t>(position - 1)); }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  Permutation power(int exponent) const;
  /// (p * q)(j) = p(q(j)).
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Entry (i, j) is 1 iff i = p(j), so the matrix sends e_j to e_{p(j)}.
ComplexMatrix perm_matrix(const Permutation& p);

bool has_zero_cross(const ComplexMatrix& a, int k, double atol = kStructuralAtol);
bool has_block_point(const ComplexMatrix& a, int k, double atol = kStructuralAtol);
/// Smallest r >= 0 with |a_ij| <= atol whenever |i - j| >= r.
int diagonal_radius(const ComplexMatrix& a, double atol = kStructuralAtol);
bool is_strictly_lower_triangular(const ComplexMatrix& a, double atol = kStructuralAtol);

std::vector<double> singular_values(const ComplexMatrix& a);
double op_norm(const ComplexMatrix& a);
double min_singular_value(const ComplexMatrix& a);
/// ||a* a - 1||, measured in operator norm.
double unitarity_defect(const ComplexMatrix& a);

}  // namespace dshlab
