#pragma once

#include "xbar/backend.hpp"
#include "xbar/problems.hpp"

namespace xbar {

// Euclidean projection onto {y : ||y_{1:n-1}|| <= y_n}, n >= 2.
// Branches evaluated in order with <= comparisons, so the cone boundary
// ||w|| == s takes the identity branch.
Vector project_soc(const Vector& v);

// ADMM for the SOCP form: x-step through `backend` on the KKT system built
// once per solve, y-step by cone projection, scaled dual update, stop on
// ||x_{k+1} - x_k|| <= eps. On Converged the primal gap ||x - y|| stays
// within kSocpGapFactor * eps (checked by tests).
inline constexpr double kSocpGapFactor = 20.0;

SolveResult solve_socp(const SocpProblem& problem, const AdmmConfig& config,
                       LinearBackend& backend);

}  // namespace xbar
