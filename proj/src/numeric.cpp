#include "iiot/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

SymMatrix::SymMatrix(DenseMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw Error(Errc::DimensionMismatch, "symmetric matrix must be square");
  const double scale = std::max(m_.max_abs(), 1e-300);
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      if (std::abs(m_(i, j) - m_(j, i)) > 1e-12 * scale)
        throw Error(Errc::ValueOutOfDomain, "matrix is not symmetric");
      const double avg = 0.5 * (m_(i, j) + m_(j, i));
      m_(i, j) = m_(j, i) = avg;
    }
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

std::vector<double> linear_solve(const DenseMatrix& a, std::span<const double> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) throw Error(Errc::DimensionMismatch, "linear_solve needs square A and matching b");
  DenseMatrix m = a;
  std::vector<double> x(b.begin(), b.end());
  const double threshold = 1e-13 * a.norm_inf();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(pivot, k))) pivot = r;
    if (std::abs(m(pivot, k)) <= threshold || m(pivot, k) == 0.0)
      throw Error(Errc::SingularMatrix, "pivot " + std::to_string(k) + " vanishes");
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(pivot, c));
      std::swap(x[k], x[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = m(r, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
      x[r] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= m(k, c) * x[c];
    x[k] = s / m(k, k);
  }
  return x;
}

namespace {

// ‖A^(2^j)‖∞ < 1 for some j ≤ 14 certifies ρ(A) < 1; 2^14 squarings cover
// the 10^4-step horizon of the plain fixed-point iteration.
bool certify_schur_stable(const DenseMatrix& a) {
  DenseMatrix p = a;
  for (int j = 0; j <= 14; ++j) {
    if (p.norm_inf() < 0.5) return true;
    p = p * p;
    if (!std::isfinite(p.max_abs())) return false;
  }
  return false;
}

}  // namespace

SymMatrix solve_dlyap(const DenseMatrix& a, const SymMatrix& c) {
  const std::size_t n = a.rows();
  if (!a.square() || c.dim() != n) throw Error(Errc::DimensionMismatch, "solve_dlyap dimensions");
  if (!certify_schur_stable(a)) throw Error(Errc::Unstable, "spectral radius of A is not below one");

  // vec(AᵀQA) = (Aᵀ ⊗ Aᵀ) vec(Q) in row-major vectorization.
  const DenseMatrix at = a.transposed();
  const DenseMatrix k = DenseMatrix::identity(n * n) - kron(at, at);
  std::vector<double> rhs(c.dense().data().begin(), c.dense().data().end());
  std::vector<double> q = linear_solve(k, rhs);

  DenseMatrix qm(n, n, std::move(q));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) qm(i, j) = qm(j, i) = 0.5 * (qm(i, j) + qm(j, i));

  // One refinement step against the residual keeps ‖AᵀQA − Q + C‖ at round-off.
  const DenseMatrix residual = at * qm * a - qm + c.dense();
  if (residual.max_abs() > 0.0) {
    std::vector<double> r(residual.data().begin(), residual.data().end());
    std::vector<double> dq = linear_solve(k, r);
    for (std::size_t i = 0; i < n * n; ++i) qm.data()[i] += dq[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) qm(i, j) = qm(j, i) = 0.5 * (qm(i, j) + qm(j, i));
  }
  return SymMatrix(std::move(qm));
}

SymEigen sym_eigen(const SymMatrix& sym) {
  const std::size_t n = sym.dim();
  DenseMatrix a = sym.dense();
  DenseMatrix v = DenseMatrix::identity(n);
  const double scale = a.max_abs();

  auto off_diag = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = n < 2 || scale == 0.0;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_diag() <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diag() > 1e-15 * scale) throw Error(Errc::NoConvergence, "Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SymEigen out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& m) { return sym_eigen(m).values; }

double bisect_threshold(const std::function<bool(double)>& pred, double tol) {
  if (!pred(1.0)) throw Error(Errc::Infeasible, "predicate fails at 1");
  if (pred(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 64 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

DenseMatrix cholesky_psd(const SymMatrix& m) {
  const std::size_t n = m.dim();
  DenseMatrix l(n, n);
  const double tol = 1e-12 * std::max(m.dense().max_abs(), 1e-300);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d < -tol) throw Error(Errc::ValueOutOfDomain, "matrix is not positive semidefinite");
    if (d <= tol) continue;  // semidefinite direction: leave column zero
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

double quadratic_form(const SymMatrix& q, std::span<const double> x) {
  if (x.size() != q.dim()) throw Error(Errc::DimensionMismatch, "quadratic form dimension");
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) v += x[i] * q(i, j) * x[j];
  return v;
}

}  // namespace iiot
