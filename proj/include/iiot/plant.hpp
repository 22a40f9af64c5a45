#pragma once

// One wireless control loop switching between closed-loop dynamics (packet
// delivered) and open-loop dynamics (packet lost), with a quadratic
// Lyapunov certificate V(x) = xᵀQx and decay target ρ.

#include <span>
#include <vector>

#include "iiot/numeric.hpp"

namespace iiot {

struct Plant {
  DenseMatrix closed_loop;  // A_c
  DenseMatrix open_loop;    // A_o
  SymMatrix weight;         // Q, positive definite
  double decay = 0.9;       // ρ in (0,1)
  SymMatrix noise_cov;      // Ξ, positive semidefinite
  double power = 1.0;       // μ > 0

  std::size_t dim() const noexcept { return closed_loop.rows(); }
};

/// Checks dimensions, ρ ∈ (0,1), μ > 0, Q ≻ 0 and Ξ ⪰ 0. Throws ValidationError.
void validate_plant(const Plant& plant);

struct WcsModel {
  std::vector<Plant> plants;
};

/// Q solving A_cᵀQA_c − Q + I = 0.
SymMatrix default_lyapunov_weight(const DenseMatrix& closed_loop);

/// θ(A_cᵀQA_c − A_oᵀQA_o) + A_oᵀQA_o − ρQ as a function of θ.
SymMatrix decay_pencil(const Plant& plant, double theta);

/// Smallest delivery probability that keeps E[V(x⁺)] ≤ ρV(x) + Tr(QΞ) for all x.
double decay_threshold(const Plant& plant);

std::vector<double> plant_step(const Plant& plant, std::span<const double> x, bool delivered,
                               std::span<const double> noise);

double lyapunov_value(const Plant& plant, std::span<const double> x);

/// Tr(QΞ), the persistent term in the decay inequality.
double noise_floor(const Plant& plant);

/// p·V(A_c x) + (1−p)·V(A_o x) + Tr(QΞ).
double expected_next_lyapunov(const Plant& plant, std::span<const double> x, double p_success);

bool expected_decay_check(const Plant& plant, double p_success);

}  // namespace iiot
