#include "xbar/problems.hpp"

#include "xbar/errors.hpp"
#include "xbar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xbar {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::IterationLimit: return "IterationLimit";
        case SolveStatus::Diverged: return "Diverged";
        case SolveStatus::BackendFailure: return "BackendFailure";
    }
    return "?";
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i];
    }
    return os.str();
}

namespace {

bool all_finite(const Matrix& M) { return M.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

void check_dims(ValidationReport& rep, const Matrix& A, const Vector& b,
                int n, int m) {
    if (A.rows() != m || A.cols() != n) {
        std::ostringstream os;
        os << "A is " << A.rows() << "x" << A.cols() << ", expected " << m
           << "x" << n;
        rep.issues.push_back(os.str());
    }
    if (b.size() != m) {
        std::ostringstream os;
        os << "b has length " << b.size() << ", expected " << m;
        rep.issues.push_back(os.str());
    }
}

double relative_asymmetry(const Matrix& P) {
    double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
    return (P - P.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

ValidationReport validate(const SocpProblem& p) {
    ValidationReport rep;
    if (p.n < 2) rep.issues.push_back("n must be >= 2 for a second-order cone");
    if (p.c.size() != p.n) {
        std::ostringstream os;
        os << "c has length " << p.c.size() << ", expected " << p.n;
        rep.issues.push_back(os.str());
    }
    check_dims(rep, p.A, p.b, p.n, p.m);
    if (!all_finite(p.A) || !all_finite(p.b) || !all_finite(p.c))
        rep.issues.push_back("non-finite entry");
    return rep;
}

ValidationReport validate(const QcqpProblem& p) {
    ValidationReport rep;
    if (p.n < 1) rep.issues.push_back("n must be >= 1");
    if (p.P0.rows() != p.n || p.P0.cols() != p.n)
        rep.issues.push_back("P0 dimension mismatch");
    else if (relative_asymmetry(p.P0) > 1e-12)
        rep.issues.push_back("P0 is not symmetric");
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& qc = p.constraints[i];
        std::ostringstream tag;
        tag << "constraint " << i << ": ";
        if (qc.P.rows() != p.n || qc.P.cols() != p.n)
            rep.issues.push_back(tag.str() + "P dimension mismatch");
        else if (relative_asymmetry(qc.P) > 1e-12)
            rep.issues.push_back(tag.str() + "P is not symmetric");
        else if (!all_finite(qc.P))
            rep.issues.push_back(tag.str() + "non-finite entry");
        if (!(qc.r >= 0))
            rep.issues.push_back(tag.str() + "r must be >= 0");
    }
    check_dims(rep, p.A, p.b, p.n, p.m);
    if (p.P0.size() > 0 && !all_finite(p.P0))
        rep.issues.push_back("non-finite entry in P0");
    if (!all_finite(p.A) || !all_finite(p.b))
        rep.issues.push_back("non-finite entry");
    return rep;
}

ValidationReport validate(const AdmmConfig& c) {
    ValidationReport rep;
    if (!(c.rho > 0)) rep.issues.push_back("rho must be > 0");
    if (!(c.epsilon > 0)) rep.issues.push_back("epsilon must be > 0");
    if (c.max_iterations < 1) rep.issues.push_back("max_iterations must be >= 1");
    return rep;
}

namespace {

// round(density*m*n) positions chosen without replacement (partial
// Fisher-Yates), standard-normal values; any empty row gets one forced
// nonzero so equality constraints never degenerate to 0 = 0.
Matrix sparse_normal(int m, int n, double density, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix A = Matrix::Zero(m, n);
    const long total = static_cast<long>(m) * n;
    long k = std::lround(density * static_cast<double>(total));
    k = std::clamp(k, 1L, total);

    std::vector<long> cells(total);
    for (long i = 0; i < total; ++i) cells[i] = i;
    for (long i = 0; i < k; ++i) {
        std::uniform_int_distribution<long> pick(i, total - 1);
        std::swap(cells[i], cells[pick(rng)]);
        long cell = cells[i];
        A(cell / n, cell % n) = normal(rng);
    }
    for (int i = 0; i < m; ++i) {
        if (A.row(i).isZero(0.0)) {
            std::uniform_int_distribution<int> col(0, n - 1);
            A(i, col(rng)) = normal(rng);
        }
    }
    return A;
}

Vector normal_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
}

}  // namespace

SocpProblem generate_socp(int n, int m, double density, std::uint64_t seed) {
    if (n < 2 || m < 1 || m >= n)
        throw DimensionError("generate_socp requires 2 <= n and 1 <= m < n");
    if (!(density > 0.0) || density > 1.0)
        throw DimensionError("density must lie in (0, 1]");

    auto rng = make_rng(seed);
    SocpProblem p;
    p.n = n;
    p.m = m;
    p.A = sparse_normal(m, n, density, rng);

    // Witness strictly inside the cone: tail = 1.5 * ||head||.
    Vector x0(n);
    Vector head = normal_vector(n - 1, rng);
    x0.head(n - 1) = head;
    x0(n - 1) = 1.5 * head.norm();
    p.b = p.A * x0;
    p.c = normal_vector(n, rng);
    p.witness_x0 = x0;
    return p;
}

QcqpProblem generate_qcqp(int n, int m_c, int m, double density,
                          std::uint64_t seed) {
    if (n < 1 || m_c < 1 || m < 1 || m >= n)
        throw DimensionError("generate_qcqp requires n >= 1, m_c >= 1, 1 <= m < n");
    if (!(density > 0.0) || density > 1.0)
        throw DimensionError("density must lie in (0, 1]");

    auto rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int rows = 4 * n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
    auto gram = [&] {
        Matrix B(rows, n);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < n; ++j) B(i, j) = normal(rng) * scale;
        Matrix P = B.transpose() * B;
        return ((P + P.transpose()) / 2).eval();  // kill rounding asymmetry
    };

    QcqpProblem p;
    p.n = n;
    p.m = m;
    p.P0 = gram() + 1e-3 * Matrix::Identity(n, n);
    Vector x0 = normal_vector(n, rng);
    p.constraints.reserve(m_c);
    for (int i = 0; i < m_c; ++i) {
        QuadConstraint qc;
        qc.P = gram();
        qc.r = x0.dot(qc.P * x0) * 1.5;  // slack 0.5 keeps x0 strictly feasible
        p.constraints.push_back(std::move(qc));
    }
    p.A = sparse_normal(m, n, density, rng);
    p.b = p.A * x0;
    p.witness_x0 = x0;
    return p;
}

}  // namespace xbar
