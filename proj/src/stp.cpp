#include "iiot/stp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw Error(Errc::DimensionMismatch, "matrix data has " + std::to_string(data_.size()) +
                                             " entries, expected " + std::to_string(rows * cols));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::column(std::span<const double> values) {
  return DenseMatrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += std::abs((*this)(r, c));
    best = std::max(best, sum);
  }
  return best;
}

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()) + " and " +
                                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace {
void require_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "elementwise operation on differently shaped matrices");
}
}  // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b);
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix out = a;
  for (double& v : out.data()) v *= s;
  return out;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector product");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.cols();
  const std::size_t p = b.rows();
  if (n == 0 || p == 0) throw Error(Errc::DimensionMismatch, "semi-tensor product of empty matrix");
  if (n == p) return a * b;
  const std::size_t l = std::lcm(n, p);
  return kron(a, DenseMatrix::identity(l / n)) * kron(b, DenseMatrix::identity(l / p));
}

LogicalVector::LogicalVector(std::size_t dim, std::size_t index) : dim_(dim), index_(index) {
  if (dim == 0 || index < 1 || index > dim) {
    throw Error(Errc::IndexOutOfRange,
                "basis vector index " + std::to_string(index) + " outside 1.." + std::to_string(dim));
  }
}

DenseMatrix LogicalVector::to_dense() const {
  DenseMatrix m(dim_, 1);
  m(index_ - 1, 0) = 1.0;
  return m;
}

LogicalMatrix::LogicalMatrix(std::size_t rows, std::vector<std::size_t> col_indices)
    : rows_(rows), cols_(std::move(col_indices)) {
  if (rows_ == 0 || cols_.empty()) throw Error(Errc::DimensionMismatch, "empty logical matrix");
  for (std::size_t c : cols_) {
    if (c < 1 || c > rows_)
      throw Error(Errc::IndexOutOfRange,
                  "logical column entry " + std::to_string(c) + " outside 1.." + std::to_string(rows_));
  }
}

LogicalMatrix LogicalMatrix::identity(std::size_t n) {
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{1});
  return LogicalMatrix(n, std::move(cols));
}

DenseMatrix LogicalMatrix::to_dense() const {
  DenseMatrix m(rows_, cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) m(cols_[j] - 1, j) = 1.0;
  return m;
}

LogicalVector stp(const LogicalVector& a, const LogicalVector& b) {
  return LogicalVector(a.dim() * b.dim(), (a.index() - 1) * b.dim() + b.index());
}

LogicalVector stp_logical(const LogicalMatrix& a, const LogicalVector& v) {
  const std::size_t n = a.cols();
  const std::size_t p = v.dim();
  if (p % n != 0) {
    throw Error(Errc::NonLogicalResult, "product of " + std::to_string(a.rows()) + "x" + std::to_string(n) +
                                            " logical matrix with a " + std::to_string(p) +
                                            "-vector has more than one column");
  }
  // (A ⊗ I_t) δ_p^j with j-1 = col*t + sub picks Col_col(A) ⊗ δ_t^{sub+1}.
  const std::size_t t = p / n;
  const std::size_t col = v.offset() / t;
  const std::size_t sub = v.offset() % t;
  return LogicalVector(a.rows() * t, (a.column(col) - 1) * t + sub + 1);
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
      throw Error(Errc::ValueOutOfRange, "state space size overflows");
    out *= base;
  }
  return out;
}

LogicalVector encode_tuple(std::span<const int> values, int kappa) {
  if (kappa < 1) throw Error(Errc::ValueOutOfDomain, "kappa must be positive");
  std::size_t offset = 0;
  for (int v : values) {
    if (v < 0 || v >= kappa) {
      throw Error(Errc::ValueOutOfDomain,
                  "tuple value " + std::to_string(v) + " outside 0.." + std::to_string(kappa - 1));
    }
    offset = offset * static_cast<std::size_t>(kappa) + static_cast<std::size_t>(v);
  }
  return LogicalVector(checked_pow(static_cast<std::size_t>(kappa), values.size()), offset + 1);
}

std::vector<int> decode_index(const LogicalVector& v, std::size_t n, int kappa) {
  if (kappa < 1 || v.dim() != checked_pow(static_cast<std::size_t>(kappa), n)) {
    throw Error(Errc::DimensionMismatch, "vector of dimension " + std::to_string(v.dim()) + " is not kappa^n");
  }
  std::vector<int> out(n);
  std::size_t offset = v.offset();
  for (std::size_t j = n; j-- > 0;) {
    out[j] = static_cast<int>(offset % static_cast<std::size_t>(kappa));
    offset /= static_cast<std::size_t>(kappa);
  }
  return out;
}

}  // namespace iiot
