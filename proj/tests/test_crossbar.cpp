#include "xbar/crossbar.hpp"

#include "xbar/errors.hpp"
#include "xbar/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace xbar;

namespace {

Matrix random_norm_matrix(int n, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = uni(rng);
    return M;
}

}  // namespace

TEST_CASE("program maps a unit cell to g_max") {
    Matrix M = Matrix::Ones(1, 1);
    DeviceParams dev;
    auto arr = program(M, dev, VariationModel{});
    CHECK(arr.G()(0, 0) == doctest::Approx(1e-3).epsilon(1e-14));
}

TEST_CASE("program stores the transpose of the coefficient matrix") {
    // Diagonal case from the contract: transpose-invariant.
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 0.5;
    D(1, 1) = 0.5;
    DeviceParams dev;
    auto arr = program(D, dev, VariationModel{});
    CHECK(arr.G()(0, 0) == doctest::Approx(0.5e-3));
    CHECK(arr.G()(1, 1) == doctest::Approx(0.5e-3));
    CHECK(arr.G()(0, 1) == 0.0);

    // Asymmetric case pins the convention: M(0,1) lands in cell (1,0).
    Matrix M = Matrix::Zero(2, 2);
    M(0, 1) = 1.0;
    auto arr2 = program(M, dev, VariationModel{});
    CHECK(arr2.G()(1, 0) == doctest::Approx(1e-3));
    CHECK(arr2.G()(0, 1) == 0.0);
}

TEST_CASE("program rejects out-of-range entries and non-square matrices") {
    DeviceParams dev;
    CHECK_THROWS_AS(program(Matrix::Constant(1, 1, 1.5), dev, VariationModel{}),
                    MappingRangeError);
    CHECK_THROWS_AS(program(Matrix::Constant(1, 1, -0.1), dev, VariationModel{}),
                    MappingRangeError);
    CHECK_THROWS_AS(program(Matrix::Zero(2, 3), dev, VariationModel{}),
                    DimensionError);
}

TEST_CASE("variation keeps a unit cell in the truncation band, deterministically") {
    Matrix M = Matrix::Ones(1, 1);
    DeviceParams dev;
    VariationModel var{0.05, 3.0, 1234};
    auto a = program(M, dev, var);
    auto b = program(M, dev, var);
    CHECK(a.G()(0, 0) == b.G()(0, 0));
    CHECK(a.G()(0, 0) >= 0.85 * dev.g_max);  // 3-sigma truncation
    CHECK(a.G()(0, 0) <= dev.g_max);         // clipped at g_max
}

TEST_CASE("every realized conductance stays in [g_min, g_max]") {
    DeviceParams dev;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix M = random_norm_matrix(6, seed);
        auto arr = program(M, dev, VariationModel{0.3, 3.0, seed * 7 + 1});
        CHECK(arr.G().minCoeff() >= 0.0);
        CHECK(arr.G().maxCoeff() <= dev.g_max);
    }
}

TEST_CASE("finite on/off ratio floors nominally-zero cells") {
    DeviceParams dev;
    dev.on_off_ratio = 100.0;
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = 1.0;
    auto arr = program(M, dev, VariationModel{});
    CHECK(arr.G()(1, 1) == doctest::Approx(dev.g_max / 100.0));
    CHECK(arr.G()(0, 1) == doctest::Approx(dev.g_max / 100.0));
}

TEST_CASE("forward_mvm: single-cell voltage divider") {
    DeviceParams dev;  // g = g_s = 1e-3
    auto arr = program(Matrix::Ones(1, 1), dev, VariationModel{});
    Vector v(1);
    v << 1.0;
    Vector out = forward_mvm(arr, v);
    CHECK(out(0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("forward_mvm: zero input gives zero output") {
    auto arr = program(random_norm_matrix(4, 3), DeviceParams{}, VariationModel{});
    CHECK(forward_mvm(arr, Vector::Zero(4)).isZero(0.0));
}

TEST_CASE("forward_mvm: uniform 2x2 array") {
    DeviceParams dev;
    auto arr = program(Matrix::Ones(2, 2), dev, VariationModel{});
    Vector v = Vector::Ones(2);
    Vector out = forward_mvm(arr, v);
    CHECK(out(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(out(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("forward_mvm matches the brute-force nodal oracle") {
    DeviceParams dev;
    auto rng = make_rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int n = 2; n <= 8; ++n) {
        auto arr = program(random_norm_matrix(n, 17 * n), dev,
                           VariationModel{0.05, 3.0, 5 * n + 1});
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = normal(rng);
        Vector got = forward_mvm(arr, v);
        Vector want = oracles::nodal_forward(arr.G(), dev.g_s, v);
        CHECK((got - want).norm() <= 1e-12 * (1 + want.norm()));
    }
}

TEST_CASE("forward_mvm output is bounded by the input peak") {
    auto rng = make_rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int n = 3 + int(seed % 5);
        auto arr = program(random_norm_matrix(n, seed + 40), DeviceParams{},
                           VariationModel{0.1, 3.0, seed});
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = normal(rng);
        Vector out = forward_mvm(arr, v);
        CHECK(out.cwiseAbs().maxCoeff() <= v.cwiseAbs().maxCoeff() + 1e-15);
    }
}

TEST_CASE("reverse_solve: scalar readout") {
    DeviceParams dev;
    auto arr = program(Matrix::Ones(1, 1), dev, VariationModel{});
    Vector r(1);
    r << 3.0;
    Vector v_in = reverse_solve(arr, r);
    CHECK(v_in(0) == doctest::Approx((dev.g_s / dev.g_max) * 3.0).epsilon(1e-12));
}

TEST_CASE("reverse_solve inverts the programmed map at sigma 0") {
    DeviceParams dev;
    auto rng = make_rng(21);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
        Matrix M = random_norm_matrix(n, 100 + n) +
                   Matrix::Identity(n, n);  // keep it solidly nonsingular
        M /= M.maxCoeff();
        auto arr = program(M, dev, VariationModel{});
        Vector w(n);
        for (int i = 0; i < n; ++i) w(i) = normal(rng);
        Vector v_out = M * w * (dev.g_max / dev.g_s);
        Vector got = reverse_solve(arr, v_out);
        CHECK((got - w).norm() <= 1e-10 * (1 + w.norm()));
    }
}

TEST_CASE("reverse_solve reports an all-zero array as singular") {
    auto arr = program(Matrix::Zero(2, 2), DeviceParams{}, VariationModel{});
    CHECK_THROWS_AS(reverse_solve(arr, Vector::Ones(2)), SingularArrayError);
}

TEST_CASE("reverse then forward-map recovers the input (duality at sigma 0)") {
    DeviceParams dev;
    auto rng = make_rng(77);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        int n = 2 + int(seed % 5);
        Matrix M = random_norm_matrix(n, seed + 300) + Matrix::Identity(n, n);
        M /= M.maxCoeff();
        auto arr = program(M, dev, VariationModel{});
        Vector w(n);
        for (int i = 0; i < n; ++i) w(i) = normal(rng);
        // forward map w -> G^T w / g_s, then reverse_solve recovers w
        Vector v_out = arr.G().transpose() * w / dev.g_s;
        Vector got = reverse_solve(arr, v_out);
        CHECK((got - w).norm() <= 1e-10 * (1 + w.norm()));
    }
}

TEST_CASE("length mismatches raise DimensionError") {
    auto arr = program(Matrix::Ones(2, 2), DeviceParams{}, VariationModel{});
    CHECK_THROWS_AS(forward_mvm(arr, Vector::Ones(3)), DimensionError);
    CHECK_THROWS_AS(reverse_solve(arr, Vector::Ones(3)), DimensionError);
}
