#pragma once

// Small dense real-matrix routines for the wireless-control side.

#include <functional>
#include <span>
#include <vector>

#include "iiot/stp.hpp"

namespace iiot {

/// Real symmetric matrix. Construction checks symmetry to 1e-12 relative and
/// then symmetrizes exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(DenseMatrix m);

  static SymMatrix identity(std::size_t n) { return SymMatrix(DenseMatrix::identity(n)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const DenseMatrix& dense() const noexcept { return m_; }
  double trace() const;

 private:
  DenseMatrix m_;
};

/// Gaussian elimination with partial pivoting.
std::vector<double> linear_solve(const DenseMatrix& a, std::span<const double> b);

/// Solves AᵀQA − Q + C = 0 for Q. Throws Unstable unless ρ(A) < 1.
SymMatrix solve_dlyap(const DenseMatrix& a, const SymMatrix& c);

struct SymEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k belongs to values[k]
};

/// Cyclic Jacobi rotations; at most 100 sweeps.
SymEigen sym_eigen(const SymMatrix& m);
std::vector<double> sym_eigenvalues(const SymMatrix& m);

/// Smallest θ in [0,1] with pred(θ) true, for pred monotone nondecreasing.
double bisect_threshold(const std::function<bool(double)>& pred, double tol = 1e-9);

/// Lower factor L with L·Lᵀ = M for positive semidefinite M. Columns whose
/// pivot collapses below tolerance are left zero.
DenseMatrix cholesky_psd(const SymMatrix& m);

double quadratic_form(const SymMatrix& q, std::span<const double> x);

}  // namespace iiot
