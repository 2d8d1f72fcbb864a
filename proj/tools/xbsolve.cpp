#include "xbar/admm_qcqp.hpp"
#include "xbar/admm_socp.hpp"
#include "xbar/backend.hpp"
#include "xbar/errors.hpp"
#include "xbar/harness.hpp"
#include "xbar/problem_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitIo = 4;

using namespace xbar;

struct SolveOptions {
    std::string kind;
    std::string problem_path;
    std::string backend = "exact";
    double rho = 0.0;  // 0 = kind default
    double eps = 1e-4;
    long max_iter = 0;  // 0 = kind default
    double sigma = 0.0;
    double gmax = 1e-3;
    double gs = 1e-3;
    std::uint64_t seed = 0;
    std::string out;
};

int run_solve(const SolveOptions& opt) {
    AnyProblem any = load_problem(opt.problem_path);
    const bool is_socp = std::holds_alternative<SocpProblem>(any);
    if ((opt.kind == "socp") != is_socp) {
        std::cerr << "problem file kind does not match subcommand\n";
        return kExitInvalidInput;
    }

    AdmmConfig cfg = is_socp ? socp_config(opt.eps) : qcqp_config(opt.eps);
    if (opt.rho > 0) cfg.rho = opt.rho;
    cfg.epsilon = opt.eps;
    if (opt.max_iter > 0) cfg.max_iterations = opt.max_iter;

    std::unique_ptr<LinearBackend> backend;
    if (opt.backend == "exact") {
        backend = std::make_unique<ExactBackend>();
    } else if (opt.backend == "crossbar") {
        DeviceParams dev;
        dev.g_max = opt.gmax;
        dev.g_s = opt.gs;
        backend = std::make_unique<CrossbarBackend>(
            dev, VariationModel{opt.sigma, 3.0, opt.seed});
    } else {
        std::cerr << "unknown backend '" << opt.backend << "'\n";
        return kExitInvalidInput;
    }

    SolveResult result;
    if (is_socp) {
        const auto& p = std::get<SocpProblem>(any);
        if (auto rep = validate(p); !rep.ok()) {
            std::cerr << "invalid problem: " << rep.to_string() << '\n';
            return kExitInvalidInput;
        }
        result = solve_socp(p, cfg, *backend);
    } else {
        const auto& p = std::get<QcqpProblem>(any);
        if (auto rep = validate(p); !rep.ok()) {
            std::cerr << "invalid problem: " << rep.to_string() << '\n';
            return kExitInvalidInput;
        }
        result = solve_qcqp(p, cfg, *backend);
    }

    if (!opt.out.empty()) save_result(result, opt.out);
    std::cout << "status=" << to_string(result.status)
              << " objective=" << format_shortest(result.objective)
              << " iterations=" << result.iterations << '\n';
    return result.status == SolveStatus::Converged ? kExitOk : kExitNotConverged;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("spec is not valid JSON: ") + e.what());
    }
    ExperimentSpec spec;
    const std::string kind = j.value("kind", "socp");
    if (kind == "socp")
        spec.kind = ProblemKind::Socp;
    else if (kind == "qcqp")
        spec.kind = ProblemKind::Qcqp;
    else
        throw std::invalid_argument("unknown kind '" + kind + "'");
    spec.rho = spec.kind == ProblemKind::Socp ? 2.5 : 0.3;
    if (j.contains("sizes")) spec.sizes = j.at("sizes").get<std::vector<int>>();
    if (j.contains("densities"))
        spec.densities = j.at("densities").get<std::vector<double>>();
    if (j.contains("sigmas")) spec.sigmas = j.at("sigmas").get<std::vector<double>>();
    spec.trials = j.value("trials", spec.trials);
    if (j.contains("epsilon")) {
        const auto& e = j.at("epsilon");
        if (e.is_string()) {
            const std::string name = e.get<std::string>();
            if (name == "strict")
                spec.epsilon = 1e-4;
            else if (name == "relaxed")
                spec.epsilon = 1e-3;
            else
                throw std::invalid_argument("epsilon preset must be strict|relaxed");
        } else {
            spec.epsilon = e.get<double>();
        }
    }
    spec.rho = j.value("rho", spec.rho);
    spec.failure_threshold = j.value("failure_threshold", spec.failure_threshold);
    spec.master_seed = j.value("master_seed", spec.master_seed);
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossbar ADMM solver for SOCP and homogeneous QCQP"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random problem instance");
    gen->require_subcommand(1);
    struct {
        int n = 16, m = 8, mc = 2;
        double density = 0.1;
        std::uint64_t seed = 0;
        std::string out;
    } g;
    auto add_gen_common = [&](CLI::App* cmd, bool qcqp) {
        cmd->add_option("--n", g.n, "variable count")->required();
        cmd->add_option("--m", g.m, "equality constraint count")->required();
        if (qcqp) cmd->add_option("--mc", g.mc, "quadratic constraint count");
        cmd->add_option("--density", g.density, "nonzero fraction of A")->required();
        cmd->add_option("--seed", g.seed, "generator seed")->required();
        cmd->add_option("--out", g.out, "output problem file")->required();
    };
    auto* gen_socp_cmd = gen->add_subcommand("socp");
    add_gen_common(gen_socp_cmd, false);
    auto* gen_qcqp_cmd = gen->add_subcommand("qcqp");
    add_gen_common(gen_qcqp_cmd, true);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a problem file");
    solve->require_subcommand(1);
    SolveOptions s;
    auto add_solve_common = [&](CLI::App* cmd) {
        cmd->add_option("--problem", s.problem_path, "problem file")->required();
        cmd->add_option("--backend", s.backend, "exact|crossbar");
        cmd->add_option("--rho", s.rho, "ADMM step size (0 = default)");
        cmd->add_option("--eps", s.eps, "stopping tolerance");
        cmd->add_option("--max-iter", s.max_iter, "iteration cap (0 = default)");
        cmd->add_option("--sigma", s.sigma, "crossbar variation level");
        cmd->add_option("--gmax", s.gmax, "max conductance (S)");
        cmd->add_option("--gs", s.gs, "sense conductance (S)");
        cmd->add_option("--seed", s.seed, "variation seed");
        cmd->add_option("--out", s.out, "result file");
    };
    auto* solve_socp_cmd = solve->add_subcommand("socp");
    add_solve_common(solve_socp_cmd);
    auto* solve_qcqp_cmd = solve->add_subcommand("qcqp");
    add_solve_common(solve_qcqp_cmd);

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a Monte-Carlo study");
    std::string spec_path, out_dir;
    bool full = false, chart = false;
    int workers = 0;
    exp->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    exp->add_option("--out-dir", out_dir, "output directory")->required();
    exp->add_flag("--full", full, "paper-scale grid: sizes 16..1024, 200 trials");
    exp->add_option("--workers", workers, "worker threads (0 = hardware)");
    exp->add_flag("--chart", chart, "emit an SVG chart");

    // project
    auto* proj = app.add_subcommand("project", "print the cone projection of a vector");
    std::string vec_arg;
    proj->add_option("--vector", vec_arg, "comma-separated components")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (gen_socp_cmd->parsed()) {
            save_problem(generate_socp(g.n, g.m, g.density, g.seed), g.out);
            return kExitOk;
        }
        if (gen_qcqp_cmd->parsed()) {
            save_problem(generate_qcqp(g.n, g.mc, g.m, g.density, g.seed), g.out);
            return kExitOk;
        }
        if (solve_socp_cmd->parsed() || solve_qcqp_cmd->parsed()) {
            s.kind = solve_socp_cmd->parsed() ? "socp" : "qcqp";
            return run_solve(s);
        }
        if (exp->parsed()) {
            ExperimentSpec spec = parse_spec_file(spec_path);
            if (full) {
                spec.sizes = {16, 32, 64, 128, 256, 512, 1024};
                spec.trials = 200;
            }
            spec.workers = workers > 0
                               ? workers
                               : std::max(1u, std::thread::hardware_concurrency());
            ExperimentReport report = run_experiment(spec);
            emit_report(report, out_dir, chart);
            std::cout << summary_text(report);
            return kExitOk;
        }
        if (proj->parsed()) {
            std::vector<double> vals;
            std::stringstream ss(vec_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
            Vector v = Eigen::Map<Vector>(vals.data(), vals.size());
            Vector y = project_soc(v);
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                if (i) std::cout << ',';
                std::cout << format_shortest(y(i));
            }
            std::cout << '\n';
            return kExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
