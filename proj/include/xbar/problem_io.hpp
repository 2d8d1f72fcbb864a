#pragma once

#include "xbar/problems.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace xbar {

using AnyProblem = std::variant<SocpProblem, QcqpProblem>;

// Problem files are JSON documents with `kind` ("socp"|"qcqp"), dimensions,
// vectors as number arrays and matrices either dense (nested arrays) or as
// {"rows", "cols", "triplets": [[i,j,value],...]} with zero-based indices.
// Numbers are written with 17 significant digits, so read-after-write is
// bit-exact.
void save_problem(const SocpProblem& p, const std::string& path);
void save_problem(const QcqpProblem& p, const std::string& path);
AnyProblem load_problem(const std::string& path);

void write_problem(const SocpProblem& p, std::ostream& os);
void write_problem(const QcqpProblem& p, std::ostream& os);
AnyProblem read_problem(std::istream& is);

// Result document for the solve subcommand: x, objective, status, iterations.
void save_result(const SolveResult& r, const std::string& path);

// Shortest decimal representation that round-trips the double exactly.
std::string format_shortest(double v);

}  // namespace xbar
