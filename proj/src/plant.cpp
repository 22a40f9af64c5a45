#include "iiot/plant.hpp"

#include <algorithm>
#include <string>

#include "iiot/errors.hpp"

namespace iiot {

void validate_plant(const Plant& plant) {
  const std::size_t n = plant.closed_loop.rows();
  std::string problems;
  auto fail = [&](const std::string& what) { problems += (problems.empty() ? "" : "; ") + what; };

  if (n == 0 || !plant.closed_loop.square()) fail("closed-loop matrix must be square and nonempty");
  if (plant.open_loop.rows() != n || plant.open_loop.cols() != n) fail("open-loop matrix dimension");
  if (plant.weight.dim() != n) fail("Lyapunov weight dimension");
  if (plant.noise_cov.dim() != n) fail("noise covariance dimension");
  if (!(plant.decay > 0.0 && plant.decay < 1.0)) fail("decay rate must lie in (0,1)");
  if (!(plant.power > 0.0)) fail("transmit power must be positive");
  if (problems.empty()) {
    const auto q_eigs = sym_eigenvalues(plant.weight);
    if (q_eigs.front() <= 0.0) fail("Lyapunov weight is not positive definite");
    const auto xi_eigs = sym_eigenvalues(plant.noise_cov);
    if (xi_eigs.front() < -1e-12 * std::max(1.0, plant.noise_cov.dense().max_abs()))
      fail("noise covariance is not positive semidefinite");
  }
  if (!problems.empty()) throw Error(Errc::ValidationError, problems);
}

SymMatrix default_lyapunov_weight(const DenseMatrix& closed_loop) {
  return solve_dlyap(closed_loop, SymMatrix::identity(closed_loop.rows()));
}

namespace {

SymMatrix congruence(const DenseMatrix& a, const SymMatrix& q) {
  return SymMatrix(a.transposed() * q.dense() * a);
}

}  // namespace

SymMatrix decay_pencil(const Plant& plant, double theta) {
  const DenseMatrix closed = congruence(plant.closed_loop, plant.weight).dense();
  const DenseMatrix open = congruence(plant.open_loop, plant.weight).dense();
  return SymMatrix(theta * (closed - open) + open - plant.decay * plant.weight.dense());
}

double decay_threshold(const Plant& plant) {
  const DenseMatrix closed = congruence(plant.closed_loop, plant.weight).dense();
  const DenseMatrix open = congruence(plant.open_loop, plant.weight).dense();
  const SymMatrix direction(closed - open);
  if (sym_eigenvalues(direction).back() > -1e-12) {
    throw Error(Errc::PreconditionViolated,
                "A_cᵀQA_c − A_oᵀQA_o is not negative definite; delivery does not contract V");
  }
  const DenseMatrix base = open - plant.decay * plant.weight.dense();
  auto holds = [&](double theta) { return sym_eigenvalues(SymMatrix(theta * direction.dense() + base)).back() <= 0.0; };
  if (!holds(1.0)) throw Error(Errc::Infeasible, "decay rate unattainable even with certain delivery");
  return bisect_threshold(holds, 1e-9);
}

std::vector<double> plant_step(const Plant& plant, std::span<const double> x, bool delivered,
                               std::span<const double> noise) {
  if (x.size() != plant.dim() || noise.size() != plant.dim())
    throw Error(Errc::DimensionMismatch, "plant_step state/noise dimension");
  std::vector<double> next = (delivered ? plant.closed_loop : plant.open_loop) * x;
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += noise[i];
  return next;
}

double lyapunov_value(const Plant& plant, std::span<const double> x) {
  if (x.size() != plant.dim()) throw Error(Errc::DimensionMismatch, "lyapunov_value dimension");
  return quadratic_form(plant.weight, x);
}

double expected_next_lyapunov(const Plant& plant, std::span<const double> x, double p_success) {
  const auto xc = plant.closed_loop * x;
  const auto xo = plant.open_loop * x;
  return p_success * quadratic_form(plant.weight, xc) + (1.0 - p_success) * quadratic_form(plant.weight, xo) +
         noise_floor(plant);
}

double noise_floor(const Plant& plant) {
  double t = 0.0;
  for (std::size_t i = 0; i < plant.dim(); ++i)
    for (std::size_t j = 0; j < plant.dim(); ++j) t += plant.weight(i, j) * plant.noise_cov(j, i);
  return t;
}

bool expected_decay_check(const Plant& plant, double p_success) {
  try {
    return p_success >= decay_threshold(plant);
  } catch (const Error& e) {
    if (e.code() == Errc::Infeasible) return false;
    throw;
  }
}

}  // namespace iiot
