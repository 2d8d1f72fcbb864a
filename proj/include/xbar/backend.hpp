#pragma once

#include "xbar/crossbar.hpp"
#include "xbar/mapping.hpp"

#include <Eigen/LU>

#include <memory>
#include <optional>

namespace xbar {

// The pluggable linear-system step of the ADMM loop. prepare() is called once
// per solve with the constant system; apply() once per iteration with the
// full augmented right-hand side, and returns the core solution. A backend
// instance serves one solve at a time.
class LinearBackend {
public:
    virtual ~LinearBackend() = default;
    virtual void prepare(const AugmentedSystem& system) = 0;
    virtual Vector apply(const Vector& full_rhs) = 0;
};

// Software direct solver on the core system K; the reference oracle.
class ExactBackend final : public LinearBackend {
public:
    void prepare(const AugmentedSystem& system) override;
    Vector apply(const Vector& full_rhs) override;

private:
    Matrix inverse_;
    int n_core_ = 0;
};

// Simulated crossbar: programs the normalized augmented matrix once (one
// variation draw per programming event) and answers every apply() through
// the reverse-solve readout.
class CrossbarBackend final : public LinearBackend {
public:
    CrossbarBackend(DeviceParams params, VariationModel variation)
        : params_(params), variation_(variation) {}

    void prepare(const AugmentedSystem& system) override;
    Vector apply(const Vector& full_rhs) override;

    const CrossbarArray& array() const { return *array_; }

private:
    DeviceParams params_;
    VariationModel variation_;
    std::optional<AugmentedSystem> system_;
    std::optional<CrossbarArray> array_;
};

}  // namespace xbar
