#pragma once

#include "xbar/problems.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xbar {

enum class ProblemKind { Socp, Qcqp };

const char* to_string(ProblemKind k);

// Desk-scale defaults; the paper-scale grid (sizes up to 1024, 200 trials)
// sits behind the experiment CLI's --full flag.
struct ExperimentSpec {
    ProblemKind kind = ProblemKind::Socp;
    std::vector<int> sizes = {16, 32, 64, 128};
    std::vector<double> densities = {0.1, 0.2};
    std::vector<double> sigmas = {0.0, 0.05, 0.10};
    int trials = 50;
    double epsilon = 1e-4;  // strict preset; relaxed is 1e-3
    double rho = 2.5;       // SOCP default; QCQP runs use 0.3
    double failure_threshold = 0.05;
    std::uint64_t master_seed = 1;
    int workers = 1;

    ValidationReport validate() const;
};

struct TrialOutcome {
    ProblemKind kind;
    int n = 0;
    int m = 0;
    double density = 0.0;
    double sigma = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;

    bool skipped = false;           // reference did not converge; excluded everywhere
    SolveStatus ref_status = SolveStatus::IterationLimit;
    SolveStatus status = SolveStatus::IterationLimit;
    long iterations = 0;
    double obj_ref = 0.0;
    double obj_xbar = 0.0;
    double relative_error = 0.0;    // |obj_xbar - obj_ref| / max(1, |obj_ref|)
    bool failed = false;
};

struct ScenarioAggregate {
    ProblemKind kind;
    int n = 0;
    double density = 0.0;
    double sigma = 0.0;
    int trials = 0;
    int skipped = 0;
    double failure_rate = 0.0;      // among non-skipped
    double mean_rel_error = 0.0;    // among non-failed
    double median_rel_error = 0.0;  // among non-failed
    double mean_iterations = 0.0;   // among non-skipped
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<TrialOutcome> trials;
    std::vector<ScenarioAggregate> aggregates;
};

// Child seed for one scenario trial; collision-free across the grid in the
// statistical sense (64-bit mix over the composite key), verified by
// enumeration in the tests.
std::uint64_t child_seed(std::uint64_t master, ProblemKind kind, int n,
                         double density, double sigma, int trial);

// Harness-side shape defaults the experiment grid uses; the generators take
// whatever the caller asks for.
inline int socp_m_for(int n) { return n / 2; }
inline int qcqp_m_for(int n) { return std::max(1, n / 4); }
inline constexpr int kQcqpConstraintCount = 2;

// Exact-backend solve at tight tolerance; this is the oracle every trial is
// measured against. eps = 1e-9 (raised to a machine-epsilon-scaled floor for
// large problem scales), max_iterations = 1e6.
SolveResult reference_solve(const SocpProblem& p, double rho);
SolveResult reference_solve(const QcqpProblem& p, double rho);

ExperimentReport run_experiment(const ExperimentSpec& spec);

// Recompute per-scenario aggregates from trial outcomes (also used to check
// the emitted aggregate file is derivable).
std::vector<ScenarioAggregate> aggregate(const ExperimentSpec& spec,
                                         const std::vector<TrialOutcome>& trials);

// Writes trials.csv, aggregate.csv and summary.txt under out_dir; with
// with_chart also a self-contained SVG of error/failure vs size.
void emit_report(const ExperimentReport& report, const std::string& out_dir,
                 bool with_chart = false);

std::string trials_csv(const ExperimentReport& report);
std::string aggregate_csv(const ExperimentReport& report);
std::string summary_text(const ExperimentReport& report);

}  // namespace xbar
