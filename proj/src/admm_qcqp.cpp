#include "xbar/admm_qcqp.hpp"

#include "xbar/admm_socp.hpp"
#include "xbar/errors.hpp"
#include "xbar/mapping.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xbar {

Matrix factor_psd(const Matrix& P) {
    if (P.rows() != P.cols()) throw DimensionError("factor_psd needs a square matrix");
    const double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
    if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("factor_psd needs a symmetric matrix");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(P);
    Vector lambda = eig.eigenvalues();
    const double lmax = lambda.size() ? lambda.maxCoeff() : 0.0;
    const double tol_neg = 1e-10 * std::max(1.0, lmax);
    for (int i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < -tol_neg) {
            std::ostringstream os;
            os << "matrix has negative eigenvalue " << lambda(i);
            throw NotPsdError(os.str());
        }
        if (lambda(i) < 0) lambda(i) = 0.0;
    }
    return lambda.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
}

ConeLift lift_constraints(const QcqpProblem& problem) {
    ConeLift lift;
    const int n = problem.n;
    lift.Q.reserve(problem.constraints.size());
    lift.C.reserve(problem.constraints.size());
    lift.d.reserve(problem.constraints.size());
    for (const auto& qc : problem.constraints) {
        if (!(qc.r >= 0)) throw std::invalid_argument("constraint bound must be >= 0");
        Matrix Q = factor_psd(qc.P);
        Matrix C = Matrix::Zero(n + 1, n);
        C.topRows(n) = Q;
        Vector d = Vector::Zero(n + 1);
        d(n) = std::sqrt(qc.r);
        lift.Q.push_back(std::move(Q));
        lift.C.push_back(std::move(C));
        lift.d.push_back(std::move(d));
    }
    return lift;
}

namespace {
constexpr double kDivergenceNorm = 1e12;
constexpr long kStallWindow = 3000;
constexpr long kStallMinIters = 6000;
}  // namespace

SolveResult solve_qcqp(const QcqpProblem& problem, const AdmmConfig& config,
                       LinearBackend& backend) {
    if (auto rep = validate(problem); !rep.ok())
        throw std::invalid_argument("invalid QCQP problem: " + rep.to_string());
    if (auto rep = validate(config); !rep.ok())
        throw std::invalid_argument("invalid config: " + rep.to_string());

    const int n = problem.n;
    const int mc = static_cast<int>(problem.constraints.size());
    const double rho = config.rho;

    SolveResult result;
    result.x = Vector::Zero(n);

    ConeLift lift = lift_constraints(problem);
    Matrix lhs = build_qcqp_normal(problem, rho);
    AugmentedSystem aug = eliminate_negatives(lhs);
    try {
        backend.prepare(aug);
    } catch (const SingularArrayError&) {
        result.status = SolveStatus::BackendFailure;
        return result;
    }

    Vector x = Vector::Zero(n);
    std::vector<Vector> z = lift.d;  // cone-feasible start
    std::vector<Vector> uu(mc, Vector::Zero(n + 1));
    Vector v = Vector::Zero(problem.m);

    double best_step = std::numeric_limits<double>::infinity();
    double stall_mark = best_step;
    long stall_mark_iter = 0;

    result.status = SolveStatus::IterationLimit;
    while (result.iterations < config.max_iterations) {
        Vector rhs = Vector::Zero(n);
        for (int i = 0; i < mc; ++i) {
            Vector g = z[i] - lift.d[i] + uu[i] / rho;
            rhs += lift.C[i].transpose() * g;
        }
        rhs += problem.A.transpose() * (problem.b - v / rho);
        rhs *= rho;

        Vector x_new;
        try {
            x_new = backend.apply(aug.full_rhs(rhs)).head(n);
        } catch (const SingularArrayError&) {
            result.status = SolveStatus::BackendFailure;
            break;
        }
        ++result.iterations;

        if (!x_new.allFinite() || x_new.norm() > kDivergenceNorm) {
            result.x = x_new;
            result.status = SolveStatus::Diverged;
            break;
        }

        double step = (x_new - x).norm();
        double feas = (problem.A * x_new - problem.b).norm();
        for (int i = 0; i < mc; ++i) {
            Vector cx_d = lift.C[i] * x_new + lift.d[i];
            Vector z_new = project_soc(cx_d - uu[i] / rho);
            step += (z_new - z[i]).norm();
            uu[i] += rho * (z_new - cx_d);
            feas += (z_new - cx_d).norm();
            z[i] = std::move(z_new);
        }
        v += rho * (problem.A * x_new - problem.b);

        result.residual_trace.emplace_back(step, feas);
        x = x_new;
        result.x = x;

        if (step <= config.epsilon && feas <= config.epsilon) {
            result.status = SolveStatus::Converged;
            break;
        }

        best_step = std::min(best_step, step);
        if (result.iterations - stall_mark_iter >= kStallWindow) {
            if (result.iterations >= kStallMinIters && best_step > 0.98 * stall_mark)
                break;
            stall_mark = best_step;
            stall_mark_iter = result.iterations;
        }
    }

    result.objective = problem.objective(result.x);
    return result;
}

}  // namespace xbar
