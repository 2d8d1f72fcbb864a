#include "xbar/problem_io.hpp"

#include "xbar/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace xbar {

using nlohmann::json;

std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

// 17 significant digits round-trip any double exactly. Non-finite values
// (possible in result documents) become null.
std::string num17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_vector(std::ostream& os, const Vector& v) {
    os << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << num17(v(i));
    }
    os << ']';
}

void write_dense(std::ostream& os, const Matrix& M) {
    os << '[';
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            if (j) os << ',';
            os << num17(M(i, j));
        }
        os << ']';
    }
    os << ']';
}

void write_triplets(std::ostream& os, const Matrix& M) {
    os << "{\"rows\":" << M.rows() << ",\"cols\":" << M.cols()
       << ",\"triplets\":[";
    bool first = true;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0.0) {
                if (!first) os << ',';
                first = false;
                os << '[' << i << ',' << j << ',' << num17(M(i, j)) << ']';
            }
    os << "]}";
}

// Coordinate list once it saves space, dense otherwise.
void write_matrix(std::ostream& os, const Matrix& M) {
    Eigen::Index nnz = (M.array() != 0.0).count();
    if (M.size() > 0 && nnz * 2 < M.size())
        write_triplets(os, M);
    else
        write_dense(os, M);
}

Matrix parse_matrix(const json& j) {
    if (j.is_array()) {
        const auto rows = j.size();
        if (rows == 0) return Matrix(0, 0);
        const auto cols = j.at(0).size();
        Matrix M(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto& row = j.at(i);
            if (row.size() != cols) throw IoError("ragged dense matrix");
            for (std::size_t c = 0; c < cols; ++c) M(i, c) = row.at(c).get<double>();
        }
        return M;
    }
    if (j.is_object()) {
        Matrix M = Matrix::Zero(j.at("rows").get<int>(), j.at("cols").get<int>());
        for (const auto& t : j.at("triplets")) {
            int i = t.at(0).get<int>();
            int c = t.at(1).get<int>();
            if (i < 0 || i >= M.rows() || c < 0 || c >= M.cols())
                throw IoError("triplet index out of range");
            M(i, c) = t.at(2).get<double>();
        }
        return M;
    }
    throw IoError("matrix must be a nested array or a triplet object");
}

Vector parse_vector(const json& j) {
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

}  // namespace

void write_problem(const SocpProblem& p, std::ostream& os) {
    os << "{\"kind\":\"socp\",\"n\":" << p.n << ",\"m\":" << p.m << ",\"c\":";
    write_vector(os, p.c);
    os << ",\"a\":";
    write_matrix(os, p.A);
    os << ",\"b\":";
    write_vector(os, p.b);
    if (p.witness_x0) {
        os << ",\"witness_x0\":";
        write_vector(os, *p.witness_x0);
    }
    os << "}\n";
}

void write_problem(const QcqpProblem& p, std::ostream& os) {
    os << "{\"kind\":\"qcqp\",\"n\":" << p.n << ",\"m\":" << p.m << ",\"p0\":";
    write_dense(os, p.P0);
    os << ",\"constraints\":[";
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        if (i) os << ',';
        os << "{\"p\":";
        write_dense(os, p.constraints[i].P);
        os << ",\"r\":" << num17(p.constraints[i].r) << '}';
    }
    os << "],\"a\":";
    write_matrix(os, p.A);
    os << ",\"b\":";
    write_vector(os, p.b);
    if (p.witness_x0) {
        os << ",\"witness_x0\":";
        write_vector(os, *p.witness_x0);
    }
    os << "}\n";
}

AnyProblem read_problem(std::istream& is) {
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw IoError(std::string("problem file is not valid JSON: ") + e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "socp") {
            SocpProblem p;
            p.n = j.at("n").get<int>();
            p.m = j.at("m").get<int>();
            p.c = parse_vector(j.at("c"));
            p.A = parse_matrix(j.at("a"));
            p.b = parse_vector(j.at("b"));
            if (j.contains("witness_x0")) p.witness_x0 = parse_vector(j.at("witness_x0"));
            return p;
        }
        if (kind == "qcqp") {
            QcqpProblem p;
            p.n = j.at("n").get<int>();
            p.m = j.at("m").get<int>();
            p.P0 = parse_matrix(j.at("p0"));
            for (const auto& c : j.at("constraints")) {
                QuadConstraint qc;
                qc.P = parse_matrix(c.at("p"));
                qc.r = c.at("r").get<double>();
                p.constraints.push_back(std::move(qc));
            }
            p.A = parse_matrix(j.at("a"));
            p.b = parse_vector(j.at("b"));
            if (j.contains("witness_x0")) p.witness_x0 = parse_vector(j.at("witness_x0"));
            return p;
        }
        throw IoError("unknown problem kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed problem document: ") + e.what());
    }
}

namespace {

template <typename P>
void save_to(const P& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_problem(p, os);
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace

void save_problem(const SocpProblem& p, const std::string& path) { save_to(p, path); }
void save_problem(const QcqpProblem& p, const std::string& path) { save_to(p, path); }

AnyProblem load_problem(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return read_problem(is);
}

void save_result(const SolveResult& r, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "{\"status\":\"" << to_string(r.status) << "\",\"objective\":"
       << num17(r.objective) << ",\"iterations\":" << r.iterations << ",\"x\":";
    write_vector(os, r.x);
    os << "}\n";
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace xbar
