#pragma once

#include "xbar/problems.hpp"

#include <Eigen/LU>

#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>

namespace xbar {

struct DeviceParams {
    double g_max = 1e-3;  // siemens
    double g_s = 1e-3;    // sense-resistor conductance, siemens
    // g_max / g_min; infinity means ideal zero off-state.
    double on_off_ratio = std::numeric_limits<double>::infinity();

    double g_min() const {
        return std::isinf(on_off_ratio) ? 0.0 : g_max / on_off_ratio;
    }
};

struct VariationModel {
    double sigma = 0.0;       // relative std deviation of realized conductance
    double truncation = 3.0;  // deviates clipped at +-truncation*sigma
    std::uint64_t seed = 0;
};

// An N x N array of programmed conductances. G(i,j) is the realized
// conductance between word-line i and bit-line j; `nominal` holds the
// pre-variation targets. Immutable after program(); the reverse-solve
// factorization is cached on first use and read-shared afterwards.
class CrossbarArray {
public:
    CrossbarArray(Matrix realized, Matrix nominal, DeviceParams params);

    const Matrix& G() const { return g_; }
    const Matrix& nominal() const { return nominal_; }
    const DeviceParams& params() const { return params_; }
    int size() const { return static_cast<int>(g_.rows()); }

    struct ReverseCache {
        Eigen::PartialPivLU<Matrix> lu;   // of G^T
        Matrix inverse;                   // (G^T)^{-1}, for fast repeated solves
        double rcond = 0.0;
    };
    // Throws SingularArrayError when the condition estimate exceeds 1e12.
    const ReverseCache& reverse_cache() const;

private:
    Matrix g_;
    Matrix nominal_;
    DeviceParams params_;

    struct CacheHolder {
        std::once_flag flag;
        std::shared_ptr<const ReverseCache> cache;
        std::exception_ptr error;
    };
    std::shared_ptr<CacheHolder> holder_;
};

// Map a normalized coefficient matrix onto conductances. Cell (i,j) is
// programmed to g_max * M_norm(j,i): the transpose, so that bit-line j's
// sense equation sums word-line contributions with the weights of row j of
// M_norm. Each cell picks up an independent multiplicative deviation
// 1 + delta, delta ~ N(0, sigma^2) truncated at +-truncation*sigma, and the
// result is clipped into [g_min, g_max]. Deterministic per variation seed.
CrossbarArray program(const Matrix& M_norm, const DeviceParams& params,
                      const VariationModel& variation);

// Ideal forward pass (Eq. of the voltage divider at each bit line):
// out_i = sum_j G(j,i) V_in(j) / (g_s + sum_k G(k,i)).
Vector forward_mvm(const CrossbarArray& array, const Vector& v_in);

// Virtual-ground reverse mode: find V_in with G^T V_in = g_s * V_out.
Vector reverse_solve(const CrossbarArray& array, const Vector& v_out);

}  // namespace xbar
