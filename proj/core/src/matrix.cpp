#include "dshlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dshlab/errors.hpp"

namespace dshlab {

namespace {

void check_position(const ComplexMatrix& a, int k) {
  if (k < 1 || k > a.dim()) {
    throw std::out_of_range("position " + std::to_string(k) + " outside 1.." +
                            std::to_string(a.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix() : values_(DenseMatrix::Zero(1, 1)) {}

ComplexMatrix::ComplexMatrix(DenseMatrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols() || values_.rows() == 0) {
    throw PreconditionError("ComplexMatrix must be square and non-empty");
  }
  if (!values_.allFinite()) {
    throw PreconditionError("ComplexMatrix entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::zero(int n) { return ComplexMatrix(DenseMatrix::Zero(n, n)); }

ComplexMatrix ComplexMatrix::identity(int n) {
  return ComplexMatrix(DenseMatrix::Identity(n, n));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  std::vector<Complex> c(entries.begin(), entries.end());
  return diagonal(std::span<const Complex>(c));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  DenseMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw PreconditionError("from_rows: matrix is not square");
    }
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(values_.adjoint()); }

ComplexMatrix ComplexMatrix::power(int exponent) const {
  if (exponent < 0) throw PreconditionError("negative matrix power");
  DenseMatrix result = DenseMatrix::Identity(dim(), dim());
  DenseMatrix base = values_;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return ComplexMatrix(std::move(result));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("dimension mismatch in +");
  return ComplexMatrix(a.values_ + b.values_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("dimension mismatch in -");
  return ComplexMatrix(a.values_ - b.values_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("dimension mismatch in *");
  return ComplexMatrix(a.values_ * b.values_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.values_); }

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double atol) const {
  return max_entry_distance(*this, other) <= atol;
}

bool ComplexMatrix::operator==(const ComplexMatrix& other) const {
  return dim() == other.dim() && values_ == other.values_;
}

double ComplexMatrix::max_abs_entry() const { return values_.cwiseAbs().maxCoeff(); }

double max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  return (a.dense() - b.dense()).cwiseAbs().maxCoeff();
}

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw PreconditionError("block_diagonal of no blocks");
  int n = 0;
  for (const auto& b : blocks) n += b.dim();
  DenseMatrix m = DenseMatrix::Zero(n, n);
  int offset = 0;
  for (const auto& b : blocks) {
    m.block(offset, offset, b.dim(), b.dim()) = b.dense();
    offset += b.dim();
  }
  return ComplexMatrix(std::move(m));
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  if (n == 0) throw PreconditionError("empty permutation");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw PreconditionError("permutation images are not a bijection on 1..n");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a < 1 || b < 1 || a > n || b > n) throw std::out_of_range("transposition index");
  auto images = identity(n).images_;
  std::swap(images[static_cast<std::size_t>(a - 1)], images[static_cast<std::size_t>(b - 1)]);
  return Permutation(std::move(images));
}

Permutation Permutation::cycle(int n, int k, int m) {
  if (k < 1 || m > n) throw std::out_of_range("cycle bounds");
  auto images = identity(n).images_;
  if (m > k) {
    for (int i = k; i < m; ++i) images[static_cast<std::size_t>(i - 1)] = i + 1;
    images[static_cast<std::size_t>(m - 1)] = k;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) {
    inv[static_cast<std::size_t>(images_[j] - 1)] = static_cast<int>(j) + 1;
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::power(int exponent) const {
  Permutation base = exponent >= 0 ? *this : inverse();
  Permutation result = identity(size());
  for (int e = std::abs(exponent); e > 0; --e) result = base * result;
  return result;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw PreconditionError("permutation size mismatch");
  std::vector<int> images(static_cast<std::size_t>(p.size()));
  for (int j = 1; j <= p.size(); ++j) images[static_cast<std::size_t>(j - 1)] = p(q(j));
  return Permutation(std::move(images));
}

ComplexMatrix perm_matrix(const Permutation& p) {
  const int n = p.size();
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (int j = 1; j <= n; ++j) m(p(j) - 1, j - 1) = 1.0;
  return ComplexMatrix(std::move(m));
}

bool has_zero_cross(const ComplexMatrix& a, int k, double atol) {
  check_position(a, k);
  const auto& m = a.dense();
  return m.row(k - 1).cwiseAbs().maxCoeff() <= atol && m.col(k - 1).cwiseAbs().maxCoeff() <= atol;
}

bool has_block_point(const ComplexMatrix& a, int k, double atol) {
  check_position(a, k);
  const int n = a.dim();
  const int head = k - 1;
  const int tail = n - head;
  if (head == 0) return true;
  const auto& m = a.dense();
  return m.block(0, head, head, tail).cwiseAbs().maxCoeff() <= atol &&
         m.block(head, 0, tail, head).cwiseAbs().maxCoeff() <= atol;
}

int diagonal_radius(const ComplexMatrix& a, double atol) {
  const int n = a.dim();
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(a(i, j)) > atol) r = std::max(r, std::abs(i - j) + 1);
    }
  }
  return r;
}

bool is_strictly_lower_triangular(const ComplexMatrix& a, double atol) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (std::abs(a(i, j)) > atol) return false;
    }
  }
  return true;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::BDCSVD<DenseMatrix> svd(a.dense());
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double op_norm(const ComplexMatrix& a) { return singular_values(a).front(); }

double min_singular_value(const ComplexMatrix& a) { return singular_values(a).back(); }

double unitarity_defect(const ComplexMatrix& a) {
  return op_norm(a.adjoint() * a - ComplexMatrix::identity(a.dim()));
}

}  // namespace dshlab
