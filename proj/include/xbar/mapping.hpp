#pragma once

#include "xbar/crossbar.hpp"
#include "xbar/problems.hpp"

#include <vector>

namespace xbar {

// KKT system of the equality-constrained x-step:
//   [ I   A^T ] [x]   [u]   (u varies per iteration)
//   [ A   0   ] [l] = [b]   (b fixed)
struct SocpKkt {
    Matrix K;  // (n+m) x (n+m)
    int n = 0;
    int m = 0;
};

SocpKkt build_socp_kkt(const SocpProblem& problem);

// Result of negative-coefficient elimination. All negatives of column j are
// rerouted through one shared auxiliary column carrying |K(i,j)|, paired with
// one auxiliary row enforcing x_j + z_j = 0. The stored M keeps unit entries
// in auxiliary rows; beta is the max entry of M. Right-hand sides are laid
// out as [core (first n_core, iteration-varying where the caller says); aux
// rows identically zero].
struct AugmentedSystem {
    Matrix M;                  // non-negative, n_aug x n_aug
    Matrix core;               // the original K, kept for exact backends
    double beta = 1.0;         // max entry of M
    int n_core = 0;
    std::vector<int> aux_map;  // auxiliary index -> original column

    int k_aux() const { return static_cast<int>(aux_map.size()); }
    int n_aug() const { return n_core + k_aux(); }

    Matrix normalized() const { return M / beta; }

    // What actually gets programmed: M/beta with each auxiliary row rescaled
    // by beta, so its two entries sit at full scale instead of 1/beta. The
    // rescaling multiplies zero-rhs rows only, so the solution is unchanged,
    // while the programmed matrix keeps row norms balanced.
    Matrix programming_matrix() const;

    Vector full_rhs(const Vector& core_rhs) const;
};

AugmentedSystem eliminate_negatives(const Matrix& K);

// Constant left-hand matrix of the QCQP x-step normal equations:
// 2 P0 + rho * sum_i Pi + rho * A^T A   (using Ci^T Ci = Pi).
// The per-iteration right-hand side rho*(sum_i Ci^T g_i + A^T h) is assembled
// by the solver from the cone lift.
Matrix build_qcqp_normal(const QcqpProblem& problem, double rho);

// Program-then-solve readout: applies V_out = rhs, reads V_in back and
// rescales by g_max / (g_s * beta), returning the first n_core entries.
// rhs must be zero in every auxiliary row.
Vector crossbar_solve(const AugmentedSystem& system, const Vector& rhs,
                      const CrossbarArray& array);

}  // namespace xbar
