#include "xbar/harness.hpp"

#include "xbar/admm_qcqp.hpp"
#include "xbar/admm_socp.hpp"
#include "xbar/backend.hpp"
#include "xbar/errors.hpp"
#include "xbar/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace xbar {

const char* to_string(ProblemKind k) {
    return k == ProblemKind::Socp ? "socp" : "qcqp";
}

ValidationReport ExperimentSpec::validate() const {
    ValidationReport rep;
    if (trials < 1) rep.issues.push_back("trials must be >= 1");
    if (sizes.empty()) rep.issues.push_back("sizes must be non-empty");
    for (int n : sizes) {
        int min_n = kind == ProblemKind::Socp ? 2 : 1;
        if (n < min_n) rep.issues.push_back("size below problem minimum");
    }
    for (double s : sigmas)
        if (!(s >= 0)) rep.issues.push_back("sigmas must be >= 0");
    for (double d : densities)
        if (!(d > 0 && d <= 1)) rep.issues.push_back("densities must lie in (0,1]");
    if (!(epsilon > 0)) rep.issues.push_back("epsilon must be > 0");
    if (!(rho > 0)) rep.issues.push_back("rho must be > 0");
    if (!(failure_threshold > 0)) rep.issues.push_back("failure_threshold must be > 0");
    if (workers < 1) rep.issues.push_back("workers must be >= 1");
    return rep;
}

std::uint64_t child_seed(std::uint64_t master, ProblemKind kind, int n,
                         double density, double sigma, int trial) {
    std::uint64_t s = mix_seed(master, kind == ProblemKind::Socp ? 1 : 2);
    s = mix_seed(s, static_cast<std::uint64_t>(n));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(density));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(sigma));
    return mix_seed(s, static_cast<std::uint64_t>(trial));
}

namespace {

constexpr double kRefEpsilon = 1e-9;
constexpr long kRefMaxIterations = 1000000;

// Absolute stop tolerances stall at the rounding floor for large problem
// scales; keep the reference epsilon above it.
double ref_eps_floor(double scale) {
    return 10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

}  // namespace

SolveResult reference_solve(const SocpProblem& p, double rho) {
    AdmmConfig cfg;
    cfg.rho = rho;
    cfg.epsilon = std::max(kRefEpsilon, ref_eps_floor(p.b.norm() + p.c.norm()));
    cfg.max_iterations = kRefMaxIterations;
    ExactBackend backend;
    return solve_socp(p, cfg, backend);
}

SolveResult reference_solve(const QcqpProblem& p, double rho) {
    double scale = p.b.norm();
    for (const auto& qc : p.constraints) scale += std::sqrt(std::max(qc.r, 0.0));
    AdmmConfig cfg;
    cfg.rho = rho;
    cfg.epsilon = std::max(kRefEpsilon, ref_eps_floor(scale));
    cfg.max_iterations = kRefMaxIterations;
    ExactBackend backend;
    return solve_qcqp(p, cfg, backend);
}

namespace {

TrialOutcome run_trial(const ExperimentSpec& spec, int n, double density,
                       double sigma, int trial) {
    TrialOutcome out;
    out.kind = spec.kind;
    out.n = n;
    out.density = density;
    out.sigma = sigma;
    out.trial = trial;
    out.seed = child_seed(spec.master_seed, spec.kind, n, density, sigma, trial);

    const std::uint64_t gen_seed = mix_seed(out.seed, 1);
    const std::uint64_t var_seed = mix_seed(out.seed, 2);

    AdmmConfig cfg;
    cfg.rho = spec.rho;
    cfg.epsilon = spec.epsilon;
    cfg.max_iterations = spec.kind == ProblemKind::Socp
                             ? socp_config(spec.epsilon, spec.rho).max_iterations
                             : qcqp_config(spec.epsilon, spec.rho).max_iterations;

    DeviceParams dev;
    VariationModel var{sigma, 3.0, var_seed};
    CrossbarBackend xbar_backend(dev, var);

    auto finish = [&](const SolveResult& ref, const SolveResult& run) {
        out.ref_status = ref.status;
        out.obj_ref = ref.objective;
        if (ref.status != SolveStatus::Converged) {
            out.skipped = true;
            return;
        }
        out.status = run.status;
        out.iterations = run.iterations;
        out.obj_xbar = run.objective;
        out.relative_error = std::abs(run.objective - ref.objective) /
                             std::max(1.0, std::abs(ref.objective));
        out.failed = run.status != SolveStatus::Converged ||
                     !(out.relative_error <= spec.failure_threshold);
    };

    if (spec.kind == ProblemKind::Socp) {
        out.m = socp_m_for(n);
        SocpProblem p = generate_socp(n, out.m, density, gen_seed);
        SolveResult ref = reference_solve(p, spec.rho);
        if (ref.status != SolveStatus::Converged) {
            finish(ref, SolveResult{});
            return out;
        }
        finish(ref, solve_socp(p, cfg, xbar_backend));
    } else {
        out.m = qcqp_m_for(n);
        QcqpProblem p = generate_qcqp(n, kQcqpConstraintCount, out.m, density, gen_seed);
        SolveResult ref = reference_solve(p, spec.rho);
        if (ref.status != SolveStatus::Converged) {
            finish(ref, SolveResult{});
            return out;
        }
        finish(ref, solve_qcqp(p, cfg, xbar_backend));
    }
    return out;
}

}  // namespace

std::vector<ScenarioAggregate> aggregate(const ExperimentSpec& spec,
                                         const std::vector<TrialOutcome>& trials) {
    std::vector<ScenarioAggregate> aggs;
    for (int n : spec.sizes)
        for (double d : spec.densities)
            for (double s : spec.sigmas) {
                ScenarioAggregate a;
                a.kind = spec.kind;
                a.n = n;
                a.density = d;
                a.sigma = s;
                std::vector<double> rels;
                long fails = 0, iter_sum = 0;
                for (const auto& t : trials) {
                    if (t.n != n || t.density != d || t.sigma != s) continue;
                    ++a.trials;
                    if (t.skipped) {
                        ++a.skipped;
                        continue;
                    }
                    iter_sum += t.iterations;
                    if (t.failed)
                        ++fails;
                    else
                        rels.push_back(t.relative_error);
                }
                const int valid = a.trials - a.skipped;
                a.failure_rate = valid > 0 ? double(fails) / valid
                                           : std::numeric_limits<double>::quiet_NaN();
                a.mean_iterations = valid > 0 ? double(iter_sum) / valid
                                              : std::numeric_limits<double>::quiet_NaN();
                if (!rels.empty()) {
                    double sum = 0;
                    for (double r : rels) sum += r;
                    a.mean_rel_error = sum / rels.size();
                    std::sort(rels.begin(), rels.end());
                    const auto k = rels.size();
                    a.median_rel_error = k % 2 ? rels[k / 2]
                                               : 0.5 * (rels[k / 2 - 1] + rels[k / 2]);
                } else {
                    a.mean_rel_error = std::numeric_limits<double>::quiet_NaN();
                    a.median_rel_error = std::numeric_limits<double>::quiet_NaN();
                }
                aggs.push_back(a);
            }
    return aggs;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (auto rep = spec.validate(); !rep.ok())
        throw std::invalid_argument("invalid experiment spec: " + rep.to_string());

    struct Key {
        int n;
        double density;
        double sigma;
        int trial;
    };
    std::vector<Key> keys;
    for (int n : spec.sizes)
        for (double d : spec.densities)
            for (double s : spec.sigmas)
                for (int t = 0; t < spec.trials; ++t) keys.push_back({n, d, s, t});

    ExperimentReport report;
    report.spec = spec;
    report.trials.resize(keys.size());

    const int workers = std::max(1, spec.workers);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= keys.size()) break;
            const Key& k = keys[i];
            report.trials[i] = run_trial(spec, k.n, k.density, k.sigma, k.trial);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // keys are generated in scenario order, so output order is deterministic
    // regardless of which worker ran which trial.
    report.aggregates = aggregate(spec, report.trials);
    return report;
}

}  // namespace xbar
