#include "xbar/backend.hpp"

#include "xbar/errors.hpp"

#include <sstream>

namespace xbar {

void ExactBackend::prepare(const AugmentedSystem& system) {
    n_core_ = system.n_core;
    Eigen::PartialPivLU<Matrix> lu(system.core);
    double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        std::ostringstream os;
        os << "core system is numerically singular (rcond " << rcond << ")";
        throw SingularArrayError(os.str());
    }
    // The inverse is applied as one GEMV per iteration; cheaper than a pair
    // of triangular solves at these sizes and well within the residual bound
    // for the conditioning we accept above.
    inverse_ = lu.inverse();
}

Vector ExactBackend::apply(const Vector& full_rhs) {
    if (full_rhs.size() < n_core_)
        throw DimensionError("rhs shorter than core system");
    return inverse_ * full_rhs.head(n_core_);
}

void CrossbarBackend::prepare(const AugmentedSystem& system) {
    system_ = system;
    array_.emplace(program(system.programming_matrix(), params_, variation_));
    array_->reverse_cache();  // factorize now; singularity surfaces at prepare
}

Vector CrossbarBackend::apply(const Vector& full_rhs) {
    if (!system_ || !array_)
        throw LayoutError("crossbar backend used before prepare()");
    return crossbar_solve(*system_, full_rhs, *array_);
}

}  // namespace xbar
