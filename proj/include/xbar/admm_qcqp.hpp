#pragma once

#include "xbar/backend.hpp"
#include "xbar/problems.hpp"

#include <vector>

namespace xbar {

// Q with Q^T Q = P from the symmetric eigendecomposition; eigenvalues in
// [-tol_neg, 0) are clamped to zero, tol_neg = 1e-10 * max(1, lambda_max).
// Throws NotPsdError below that.
Matrix factor_psd(const Matrix& P);

// Second-order-cone lift of the quadratic constraints:
// z_i = [Q_i x; sqrt(r_i)], C_i = [Q_i; 0], d_i = [0,...,0, sqrt(r_i)].
struct ConeLift {
    std::vector<Matrix> Q;  // n x n factors
    std::vector<Matrix> C;  // (n+1) x n
    std::vector<Vector> d;  // length n+1
};

ConeLift lift_constraints(const QcqpProblem& problem);

// ADMM on the lifted problem: x-step through `backend` on the constant
// normal-equation matrix, per-constraint cone projections, multiplier
// updates, and the two-residual stop rule
//   ||x+ - x|| + sum ||z_i+ - z_i|| <= eps  AND
//   ||A x+ - b|| + sum ||z_i+ - C_i x+ - d_i|| <= eps.
SolveResult solve_qcqp(const QcqpProblem& problem, const AdmmConfig& config,
                       LinearBackend& backend);

}  // namespace xbar
