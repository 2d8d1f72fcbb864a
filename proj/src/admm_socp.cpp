#include "xbar/admm_socp.hpp"

#include "xbar/errors.hpp"
#include "xbar/mapping.hpp"

#include <cmath>
#include <stdexcept>

namespace xbar {

Vector project_soc(const Vector& v) {
    const int n = static_cast<int>(v.size());
    if (n < 2) throw DimensionError("project_soc needs dimension >= 2");
    const auto w = v.head(n - 1);
    const double s = v(n - 1);
    const double nw = w.norm();
    if (nw <= -s) return Vector::Zero(n);
    if (nw <= s) return v;
    // nw > |s| >= 0 here, so the division is safe.
    Vector out(n);
    const double coef = 0.5 * (1.0 + s / nw);
    out.head(n - 1) = coef * w;
    out(n - 1) = coef * nw;
    return out;
}

namespace {

constexpr double kDivergenceNorm = 1e12;
// Drift-direction certificate checks, all relative.
constexpr double kCertTol = 1e-7;
constexpr int kCertWindow = 256;
// Oscillation cut-off: give up once the running best step-change has not
// improved by 2% across this many iterations.
constexpr long kStallWindow = 3000;
constexpr long kStallMinIters = 6000;

}  // namespace

SolveResult solve_socp(const SocpProblem& problem, const AdmmConfig& config,
                       LinearBackend& backend) {
    if (auto rep = validate(problem); !rep.ok())
        throw std::invalid_argument("invalid SOCP problem: " + rep.to_string());
    if (auto rep = validate(config); !rep.ok())
        throw std::invalid_argument("invalid config: " + rep.to_string());

    const int n = problem.n;
    const double rho = config.rho;

    SolveResult result;
    result.x = Vector::Zero(n);

    SocpKkt kkt = build_socp_kkt(problem);
    AugmentedSystem aug = eliminate_negatives(kkt.K);
    try {
        backend.prepare(aug);
    } catch (const SingularArrayError&) {
        result.status = SolveStatus::BackendFailure;
        return result;
    }

    Vector x = Vector::Zero(n);
    Vector y = Vector::Zero(n);
    Vector mu = Vector::Zero(n);
    Vector u = y - (mu + problem.c) / rho;
    Vector core_rhs(n + problem.m);
    core_rhs.tail(problem.m) = problem.b;

    Vector window_mark;       // iterate kCertWindow iterations ago
    double best_step = std::numeric_limits<double>::infinity();
    double stall_mark = best_step;
    long stall_mark_iter = 0;

    result.status = SolveStatus::IterationLimit;
    while (result.iterations < config.max_iterations) {
        core_rhs.head(n) = u;
        Vector s;
        try {
            s = backend.apply(aug.full_rhs(core_rhs));
        } catch (const SingularArrayError&) {
            result.status = SolveStatus::BackendFailure;
            break;
        }
        Vector x_new = s.head(n);
        ++result.iterations;

        if (!x_new.allFinite() || x_new.norm() > kDivergenceNorm) {
            result.x = x_new;
            result.status = SolveStatus::Diverged;
            break;
        }

        Vector v = x_new + mu / rho;
        y = project_soc(v);
        mu += rho * (x_new - y);
        u = y - (mu + problem.c) / rho;

        const double step = (x_new - x).norm();
        result.residual_trace.emplace_back(step, (x_new - y).norm());
        x = x_new;
        result.x = x;

        if (step <= config.epsilon) {
            result.status = SolveStatus::Converged;
            break;
        }

        // Unbounded problems drift at constant speed, so the 1e12 norm bound
        // alone would never trigger. The averaged drift direction converges
        // to a recession direction; abort once it certifies unboundedness.
        if (result.iterations % kCertWindow == 0) {
            if (window_mark.size() == n) {
                Vector drift = (x - window_mark) / kCertWindow;
                const double dn = drift.norm();
                if (dn > kCertTol) {
                    Vector d = drift / dn;
                    bool descends = problem.c.dot(d) < -kCertTol;
                    bool in_null = (problem.A * d).norm() < kCertTol;
                    bool in_cone = (d - project_soc(d)).norm() < kCertTol;
                    if (descends && in_null && in_cone) {
                        result.status = SolveStatus::Diverged;
                        break;
                    }
                }
            }
            window_mark = x;
        }

        best_step = std::min(best_step, step);
        if (result.iterations - stall_mark_iter >= kStallWindow) {
            if (result.iterations >= kStallMinIters && best_step > 0.98 * stall_mark)
                break;  // oscillating; IterationLimit without burning the cap
            stall_mark = best_step;
            stall_mark_iter = result.iterations;
        }
    }

    result.objective = problem.objective(result.x);
    return result;
}

}  // namespace xbar
