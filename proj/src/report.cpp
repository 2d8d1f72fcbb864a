#include "xbar/harness.hpp"

#include "xbar/errors.hpp"
#include "xbar/problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace xbar {

namespace {

const char* kTrialHeader =
    "kind,n,m,density,sigma,trial,seed,status,iterations,obj_ref,obj_xbar,"
    "rel_error,failed";
const char* kAggregateHeader =
    "kind,n,density,sigma,trials,skipped,failure_rate,mean_rel_error,"
    "median_rel_error,mean_iterations";

std::string status_cell(const TrialOutcome& t) {
    if (t.skipped) return "Skipped";
    return to_string(t.status);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace

std::string trials_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << kTrialHeader << '\n';
    for (const auto& t : report.trials) {
        os << to_string(t.kind) << ',' << t.n << ',' << t.m << ','
           << format_shortest(t.density) << ',' << format_shortest(t.sigma) << ','
           << t.trial << ',' << t.seed << ',' << status_cell(t) << ','
           << t.iterations << ',' << format_shortest(t.obj_ref) << ','
           << (t.skipped ? "nan" : format_shortest(t.obj_xbar)) << ','
           << (t.skipped ? "nan" : format_shortest(t.relative_error)) << ','
           << (t.failed ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string aggregate_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << kAggregateHeader << '\n';
    for (const auto& a : report.aggregates) {
        os << to_string(a.kind) << ',' << a.n << ',' << format_shortest(a.density)
           << ',' << format_shortest(a.sigma) << ',' << a.trials << ','
           << a.skipped << ',' << format_shortest(a.failure_rate) << ','
           << format_shortest(a.mean_rel_error) << ','
           << format_shortest(a.median_rel_error) << ','
           << format_shortest(a.mean_iterations) << '\n';
    }
    return os.str();
}

std::string summary_text(const ExperimentReport& report) {
    std::ostringstream os;
    os << "experiment: kind=" << to_string(report.spec.kind)
       << " eps=" << format_shortest(report.spec.epsilon)
       << " rho=" << format_shortest(report.spec.rho)
       << " trials=" << report.spec.trials
       << " master_seed=" << report.spec.master_seed << "\n\n";
    os << std::left << std::setw(6) << "n" << std::setw(9) << "density"
       << std::setw(7) << "sigma" << std::setw(8) << "trials" << std::setw(9)
       << "skipped" << std::setw(10) << "fail" << std::setw(12) << "mean_rel"
       << std::setw(12) << "med_rel" << std::setw(10) << "mean_it" << '\n';
    for (const auto& a : report.aggregates) {
        os << std::left << std::setw(6) << a.n << std::setw(9) << a.density
           << std::setw(7) << a.sigma << std::setw(8) << a.trials << std::setw(9)
           << a.skipped << std::setw(10) << std::setprecision(4) << a.failure_rate
           << std::setw(12) << std::setprecision(4) << a.mean_rel_error
           << std::setw(12) << std::setprecision(4) << a.median_rel_error
           << std::setw(10) << std::setprecision(5) << a.mean_iterations << '\n';
    }
    return os.str();
}

namespace {

struct Series {
    double density;
    double sigma;
    std::vector<std::pair<double, double>> points;  // (n, value)
};

std::string svg_chart(const ExperimentReport& report) {
    const auto& aggs = report.aggregates;
    auto collect = [&](bool failure) {
        std::vector<Series> out;
        for (double d : report.spec.densities)
            for (double s : report.spec.sigmas) {
                Series se{d, s, {}};
                for (const auto& a : aggs)
                    if (a.density == d && a.sigma == s) {
                        double v = failure ? a.failure_rate : a.mean_rel_error;
                        if (std::isfinite(v)) se.points.emplace_back(a.n, v);
                    }
                if (!se.points.empty()) out.push_back(se);
            }
        return out;
    };

    const int W = 460, H = 320, ML = 60, MB = 40, MT = 30, MR = 20;
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * W
       << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

    auto panel = [&](int x0, const char* title, const std::vector<Series>& ss) {
        double nmin = 1e300, nmax = 0, vmax = 0;
        for (const auto& se : ss)
            for (auto [n, v] : se.points) {
                nmin = std::min(nmin, n);
                nmax = std::max(nmax, n);
                vmax = std::max(vmax, v);
            }
        if (vmax <= 0) vmax = 1.0;
        vmax *= 1.1;
        auto xmap = [&](double n) {
            double t = nmax > nmin ? (std::log2(n) - std::log2(nmin)) /
                                         (std::log2(nmax) - std::log2(nmin))
                                   : 0.5;
            return x0 + ML + t * (W - ML - MR);
        };
        auto ymap = [&](double v) { return H - MB - (v / vmax) * (H - MT - MB); };

        os << "<text x=\"" << x0 + W / 2 << "\" y=\"16\" text-anchor=\"middle\">"
           << title << "</text>\n";
        os << "<line x1=\"" << x0 + ML << "\" y1=\"" << H - MB << "\" x2=\""
           << x0 + W - MR << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << x0 + ML << "\" y1=\"" << MT << "\" x2=\"" << x0 + ML
           << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
        for (int g = 0; g <= 4; ++g) {
            double v = vmax * g / 4;
            os << "<text x=\"" << x0 + ML - 6 << "\" y=\"" << ymap(v) + 4
               << "\" text-anchor=\"end\">" << std::setprecision(3) << v
               << "</text>\n";
        }
        for (double n = nmin; n <= nmax * 1.001; n *= 2) {
            os << "<text x=\"" << xmap(n) << "\" y=\"" << H - MB + 16
               << "\" text-anchor=\"middle\">" << (int)n << "</text>\n";
        }
        int ci = 0;
        for (const auto& se : ss) {
            const char* col = colors[ci % 8];
            os << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
            for (auto [n, v] : se.points) os << xmap(n) << ',' << ymap(v) << ' ';
            os << "\"/>\n";
            os << "<text x=\"" << x0 + ML + 8 << "\" y=\"" << MT + 14 * ci + 10
               << "\" fill=\"" << col << "\">d=" << se.density
               << " sigma=" << se.sigma << "</text>\n";
            ++ci;
        }
    };

    panel(0, "mean relative error vs size", collect(false));
    panel(W, "failure rate vs size", collect(true));
    os << "</svg>\n";
    return os.str();
}

}  // namespace

void emit_report(const ExperimentReport& report, const std::string& out_dir,
                 bool with_chart) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory: " + out_dir);
    write_file(out_dir + "/trials.csv", trials_csv(report));
    write_file(out_dir + "/aggregate.csv", aggregate_csv(report));
    write_file(out_dir + "/summary.txt", summary_text(report));
    if (with_chart) write_file(out_dir + "/chart.svg", svg_chart(report));
}

}  // namespace xbar
