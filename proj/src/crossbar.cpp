#include "xbar/crossbar.hpp"

#include "xbar/errors.hpp"
#include "xbar/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xbar {

CrossbarArray::CrossbarArray(Matrix realized, Matrix nominal, DeviceParams params)
    : g_(std::move(realized)),
      nominal_(std::move(nominal)),
      params_(params),
      holder_(std::make_shared<CacheHolder>()) {}

const CrossbarArray::ReverseCache& CrossbarArray::reverse_cache() const {
    auto& h = *holder_;
    std::call_once(h.flag, [&] {
        try {
            auto cache = std::make_shared<ReverseCache>();
            cache->lu.compute(g_.transpose());
            cache->rcond = cache->lu.rcond();
            if (!(cache->rcond > 1e-12)) {
                std::ostringstream os;
                os << "array is numerically singular (rcond " << cache->rcond << ")";
                throw SingularArrayError(os.str());
            }
            cache->inverse = cache->lu.inverse();
            h.cache = std::move(cache);
        } catch (...) {
            h.error = std::current_exception();
        }
    });
    if (h.error) std::rethrow_exception(h.error);
    return *h.cache;
}

CrossbarArray program(const Matrix& M_norm, const DeviceParams& params,
                      const VariationModel& variation) {
    if (M_norm.rows() != M_norm.cols())
        throw DimensionError("crossbar matrix must be square");
    if (!(params.g_max > 0) || !(params.g_s > 0) || !(params.on_off_ratio > 1))
        throw DimensionError("invalid device parameters");
    if (!(variation.sigma >= 0) || !(variation.truncation > 0))
        throw DimensionError("invalid variation model");
    const int N = static_cast<int>(M_norm.rows());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double v = M_norm(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") = " << v
                   << " outside [0, 1]";
                throw MappingRangeError(os.str());
            }
        }

    const double g_min = params.g_min();
    // Cell (i,j) holds M_norm(j,i): bit-line j senses row j of M_norm.
    Matrix nominal(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double g = params.g_max * M_norm(j, i);
            if (g == 0.0 && g_min > 0.0) g = g_min;  // off-state floor
            nominal(i, j) = g;
        }

    Matrix realized = nominal;
    if (variation.sigma > 0.0) {
        auto rng = make_rng(variation.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double lim = variation.truncation;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double delta = std::clamp(normal(rng), -lim, lim) * variation.sigma;
                realized(i, j) =
                    std::clamp(nominal(i, j) * (1.0 + delta), g_min, params.g_max);
            }
    }
    return CrossbarArray(std::move(realized), std::move(nominal), params);
}

Vector forward_mvm(const CrossbarArray& array, const Vector& v_in) {
    const int N = array.size();
    if (v_in.size() != N)
        throw DimensionError("input vector length does not match array size");
    const Matrix& G = array.G();
    Vector column_sums = G.colwise().sum();
    Vector out = G.transpose() * v_in;
    for (int i = 0; i < N; ++i)
        out(i) /= array.params().g_s + column_sums(i);
    return out;
}

Vector reverse_solve(const CrossbarArray& array, const Vector& v_out) {
    if (v_out.size() != array.size())
        throw DimensionError("output vector length does not match array size");
    const auto& cache = array.reverse_cache();
    return cache.inverse * (array.params().g_s * v_out);
}

}  // namespace xbar
