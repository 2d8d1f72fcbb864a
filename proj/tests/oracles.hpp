// Test-only oracles, written independently of the library's solve paths.
#pragma once

#include "xbar/problems.hpp"

#include <cmath>
#include <vector>

namespace oracles {

using xbar::Matrix;
using xbar::Vector;

// Plain Gaussian elimination with partial pivoting; the independent dense
// solver the mapping/crossbar results are compared against.
inline Vector gauss_solve(Matrix A, Vector b) {
    const int n = static_cast<int>(A.rows());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (piv != k) {
            A.row(piv).swap(A.row(k));
            std::swap(b(piv), b(k));
        }
        for (int i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            A.row(i).tail(n - k) -= f * A.row(k).tail(n - k);
            b(i) -= f * b(k);
        }
    }
    Vector x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b(i) - A.row(i).tail(n - 1 - i).dot(x.tail(n - 1 - i));
        x(i) = s / A(i, i);
    }
    return x;
}

// Brute-force nodal analysis of the forward crossbar read: every bit line j
// is one node with the sense conductance to ground and one device to each
// driven word line. Assembles and solves the full nodal system rather than
// exploiting that it is diagonal.
inline Vector nodal_forward(const Matrix& G, double g_s, const Vector& v_in) {
    const int N = static_cast<int>(G.rows());
    Matrix Y = Matrix::Zero(N, N);
    Vector I = Vector::Zero(N);
    for (int j = 0; j < N; ++j) {
        Y(j, j) += g_s;
        for (int i = 0; i < N; ++i) {
            Y(j, j) += G(i, j);
            I(j) += G(i, j) * v_in(i);
        }
    }
    return gauss_solve(Y, I);
}

// Projection onto the second-order cone by 2D grid search with refinement.
// Any cone point at distance-minimizing y has the form [t * w_hat; u] with
// 0 <= t <= u, so search (t, u) on a shrinking grid.
inline Vector grid_project_soc(const Vector& v, int rounds = 40) {
    const int n = static_cast<int>(v.size());
    Vector w = v.head(n - 1);
    const double s = v(n - 1);
    const double nw = w.norm();
    Vector w_hat = nw > 0 ? Vector(w / nw) : Vector(Vector::Zero(n - 1));

    double lo_t = 0, hi_t = nw + std::abs(s) + 1;
    double lo_u = 0, hi_u = nw + std::abs(s) + 1;
    double best_t = 0, best_u = 0, best = 1e300;
    const int grid = 24;
    for (int r = 0; r < rounds; ++r) {
        for (int a = 0; a <= grid; ++a)
            for (int c = 0; c <= grid; ++c) {
                double t = lo_t + (hi_t - lo_t) * a / grid;
                double u = lo_u + (hi_u - lo_u) * c / grid;
                if (t > u) continue;
                double d = (t - nw) * (t - nw) + (u - s) * (u - s);
                if (d < best) {
                    best = d;
                    best_t = t;
                    best_u = u;
                }
            }
        double span_t = (hi_t - lo_t) / grid * 2;
        double span_u = (hi_u - lo_u) / grid * 2;
        lo_t = std::max(0.0, best_t - span_t);
        hi_t = best_t + span_t;
        lo_u = std::max(0.0, best_u - span_u);
        hi_u = best_u + span_u;
    }
    Vector y(n);
    y.head(n - 1) = best_t * w_hat;
    y(n - 1) = best_u;
    return y;
}

}  // namespace oracles
