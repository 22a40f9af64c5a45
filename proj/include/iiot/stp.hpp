#pragma once

// Canonical-basis algebra for finite-valued dynamics.
//
// Conventions used by every module:
//   * δ_N^i is the i-th column of I_N, i in 1..N (LogicalVector keeps the
//     1-based index to match the mathematical notation).
//   * Tuples are folded left to right, so the leftmost coordinate is the most
//     significant digit: (v_1,...,v_n) -> 1 + Σ v_j κ^{n-j}.

#include <cstddef>
#include <span>
#include <vector>

namespace iiot {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static DenseMatrix identity(std::size_t n);
  /// Column vector (n×1).
  static DenseMatrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  DenseMatrix transposed() const;
  double norm_inf() const;  // max row sum
  double max_abs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Semi-tensor product (A⊗I_{l/n})(B⊗I_{l/p}), l = lcm(cols(A), rows(B)).
DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b);

class LogicalVector {
 public:
  LogicalVector(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return dim_; }
  /// 1-based position of the single 1 entry.
  std::size_t index() const noexcept { return index_; }
  /// 0-based position, used for table lookups.
  std::size_t offset() const noexcept { return index_ - 1; }

  DenseMatrix to_dense() const;

  friend bool operator==(const LogicalVector&, const LogicalVector&) = default;

 private:
  std::size_t dim_;
  std::size_t index_;
};

/// m×n matrix whose columns are basis vectors; stored by column index only.
class LogicalMatrix {
 public:
  LogicalMatrix(std::size_t rows, std::vector<std::size_t> col_indices);

  static LogicalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_.size(); }
  /// 1-based row index of the 1 in column `col` (0-based column).
  std::size_t column(std::size_t col) const { return cols_[col]; }
  std::span<const std::size_t> col_indices() const noexcept { return cols_; }

  DenseMatrix to_dense() const;

  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

 private:
  std::size_t rows_;
  std::vector<std::size_t> cols_;
};

/// δ_m^i ⋉ δ_n^j = δ_{mn}^{(i-1)n+j}.
LogicalVector stp(const LogicalVector& a, const LogicalVector& b);

/// Exact-index STP of a logical matrix with a basis vector. Requires the
/// product to be a vector, i.e. cols(A) must divide dim(v).
LogicalVector stp_logical(const LogicalMatrix& a, const LogicalVector& v);

LogicalVector encode_tuple(std::span<const int> values, int kappa);
std::vector<int> decode_index(const LogicalVector& v, std::size_t n, int kappa);

/// κ^n with overflow detection.
std::size_t checked_pow(std::size_t base, std::size_t exp);

}  // namespace iiot
