#include "xbar/mapping.hpp"

#include "xbar/errors.hpp"

#include <cmath>
#include <sstream>

namespace xbar {

SocpKkt build_socp_kkt(const SocpProblem& problem) {
    auto rep = validate(problem);
    if (!rep.ok()) throw DimensionError("invalid SOCP problem: " + rep.to_string());
    const int n = problem.n, m = problem.m;
    SocpKkt sys;
    sys.n = n;
    sys.m = m;
    sys.K = Matrix::Zero(n + m, n + m);
    sys.K.topLeftCorner(n, n) = Matrix::Identity(n, n);
    sys.K.topRightCorner(n, m) = problem.A.transpose();
    sys.K.bottomLeftCorner(m, n) = problem.A;
    return sys;
}

AugmentedSystem eliminate_negatives(const Matrix& K) {
    if (K.rows() != K.cols()) throw DimensionError("K must be square");
    if (!K.allFinite()) throw DimensionError("K has non-finite entries");
    const int N = static_cast<int>(K.rows());

    AugmentedSystem sys;
    sys.core = K;
    sys.n_core = N;
    for (int j = 0; j < N; ++j)
        if ((K.col(j).array() < 0.0).any()) sys.aux_map.push_back(j);

    const int k = sys.k_aux();
    sys.M = Matrix::Zero(N + k, N + k);
    sys.M.topLeftCorner(N, N) = K.cwiseMax(0.0);
    for (int t = 0; t < k; ++t) {
        const int j = sys.aux_map[t];
        for (int i = 0; i < N; ++i)
            if (K(i, j) < 0.0) sys.M(i, N + t) = -K(i, j);
        // x_j + z_j = 0
        sys.M(N + t, j) = 1.0;
        sys.M(N + t, N + t) = 1.0;
    }
    double mx = sys.M.size() > 0 ? sys.M.maxCoeff() : 0.0;
    sys.beta = mx > 0.0 ? mx : 1.0;
    return sys;
}

Matrix AugmentedSystem::programming_matrix() const {
    Matrix P = M / beta;
    // Auxiliary rows carry zero right-hand sides, so rescaling them is exact;
    // at full scale their unit pair no longer vanishes next to the core rows.
    P.bottomRows(k_aux()) *= beta;
    return P;
}

Vector AugmentedSystem::full_rhs(const Vector& core_rhs) const {
    if (core_rhs.size() != n_core)
        throw DimensionError("core rhs length does not match system");
    Vector r = Vector::Zero(n_aug());
    r.head(n_core) = core_rhs;
    return r;
}

Matrix build_qcqp_normal(const QcqpProblem& problem, double rho) {
    auto rep = validate(problem);
    if (!rep.ok()) throw DimensionError("invalid QCQP problem: " + rep.to_string());
    if (!(rho > 0)) throw DimensionError("rho must be > 0");
    Matrix lhs = 2.0 * problem.P0;
    for (const auto& qc : problem.constraints) lhs += rho * qc.P;
    lhs += rho * problem.A.transpose() * problem.A;
    return lhs;
}

Vector crossbar_solve(const AugmentedSystem& system, const Vector& rhs,
                      const CrossbarArray& array) {
    if (rhs.size() != system.n_aug())
        throw DimensionError("rhs length does not match augmented system");
    if (array.size() != system.n_aug())
        throw DimensionError("array size does not match augmented system");
    for (int t = 0; t < system.k_aux(); ++t)
        if (rhs(system.n_core + t) != 0.0) {
            std::ostringstream os;
            os << "auxiliary rhs entry " << t << " must be zero";
            throw LayoutError(os.str());
        }
    Vector v_in = reverse_solve(array, rhs);
    const auto& dev = array.params();
    double gain = dev.g_max / (dev.g_s * system.beta);
    return (gain * v_in).head(system.n_core);
}

}  // namespace xbar
