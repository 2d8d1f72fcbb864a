#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xbar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// minimize c'x  s.t.  A x = b,  ||x_{1:n-1}||_2 <= x_n
struct SocpProblem {
    Vector c;   // length n
    Matrix A;   // m x n
    Vector b;   // length m
    int n = 0;
    int m = 0;
    // Interior feasible point recorded by the generator, if any.
    std::optional<Vector> witness_x0;

    double objective(const Vector& x) const { return c.dot(x); }
};

// minimize x'P0 x  s.t.  x'Pi x <= ri (i=1..m_c),  A x = b
struct QuadConstraint {
    Matrix P;   // symmetric PSD, n x n
    double r = 0.0;
};

struct QcqpProblem {
    Matrix P0;  // symmetric, n x n
    std::vector<QuadConstraint> constraints;
    Matrix A;   // m x n
    Vector b;   // length m
    int n = 0;
    int m = 0;
    std::optional<Vector> witness_x0;

    double objective(const Vector& x) const { return x.dot(P0 * x); }
};

enum class SolveStatus { Converged, IterationLimit, Diverged, BackendFailure };

const char* to_string(SolveStatus s);

struct SolveResult {
    Vector x;
    double objective = 0.0;
    long iterations = 0;
    SolveStatus status = SolveStatus::IterationLimit;
    // (step-change norm, primal residual norm) per iteration.
    std::vector<std::pair<double, double>> residual_trace;
};

struct AdmmConfig {
    double rho = 1.0;
    double epsilon = 1e-4;
    long max_iterations = 20000;
};

// Stopping-tolerance presets; the iteration budget follows the 5/eps heuristic.
inline AdmmConfig socp_config(double eps = 1e-4, double rho = 2.5) {
    return AdmmConfig{rho, eps, 20000};
}
inline AdmmConfig qcqp_config(double eps = 1e-4, double rho = 0.3) {
    long cap = static_cast<long>(std::min(5.0 / eps, 1e6));
    return AdmmConfig{rho, eps, cap};
}

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const SocpProblem& p);
ValidationReport validate(const QcqpProblem& p);
ValidationReport validate(const AdmmConfig& c);

// Deterministic random instances. A gets round(density*m*n) nonzeros at
// uniformly chosen positions with standard-normal values, plus one forced
// nonzero in any row left empty so the KKT system stays nonsingular for
// full-rank draws. Feasibility is by witness: b = A*x0 with x0 recorded.
SocpProblem generate_socp(int n, int m, double density, std::uint64_t seed);

// P0 = B0'B0 + 1e-3*I and Pi = Bi'Bi with Bi a 4n-by-n normal draw scaled by
// 1/sqrt(4n); the tall aspect ratio keeps the Gram factors well conditioned.
// ri = x0'Pi x0 * 1.5 and b = A*x0 so every instance is feasible and bounded.
QcqpProblem generate_qcqp(int n, int m_c, int m, double density, std::uint64_t seed);

}  // namespace xbar
