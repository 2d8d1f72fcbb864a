#include "xbar/problems.hpp"

#include "xbar/errors.hpp"
#include "xbar/problem_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace xbar;

TEST_CASE("validate accepts a well-formed SOCP") {
    SocpProblem p;
    p.n = 2;
    p.m = 1;
    p.c = Vector::Zero(2);
    p.A = Matrix::Ones(1, 2);
    p.b = Vector::Ones(1);
    CHECK(validate(p).ok());
}

TEST_CASE("validate flags a b-length mismatch") {
    SocpProblem p;
    p.n = 2;
    p.m = 1;
    p.c = Vector::Zero(2);
    p.A = Matrix::Ones(1, 2);
    p.b = Vector::Ones(3);
    auto rep = validate(p);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.to_string().find("b has length") != std::string::npos);
}

TEST_CASE("validate flags an asymmetric constraint matrix") {
    QcqpProblem p;
    p.n = 2;
    p.m = 1;
    p.P0 = Matrix::Identity(2, 2);
    QuadConstraint qc;
    qc.P = Matrix::Zero(2, 2);
    qc.P(0, 1) = 1.0;
    qc.r = 1.0;
    p.constraints.push_back(qc);
    p.A = Matrix::Ones(1, 2);
    p.b = Vector::Ones(1);
    auto rep = validate(p);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.to_string().find("not symmetric") != std::string::npos);
}

TEST_CASE("generate_socp records a consistent interior witness") {
    auto p = generate_socp(16, 8, 0.1, 42);
    REQUIRE(p.witness_x0.has_value());
    const Vector& x0 = *p.witness_x0;
    CHECK((p.A * x0 - p.b).norm() == 0.0);  // b was defined as A*x0
    CHECK(x0.head(15).norm() < x0(15));
    CHECK(validate(p).ok());
}

TEST_CASE("generate_socp at density 1 fills every entry") {
    auto p = generate_socp(16, 8, 1.0, 1);
    CHECK((p.A.array() != 0.0).count() == 16 * 8);
}

TEST_CASE("generate_socp is deterministic") {
    auto a = generate_socp(16, 8, 0.1, 7);
    auto b = generate_socp(16, 8, 0.1, 7);
    CHECK(a.A == b.A);
    CHECK(a.b == b.b);
    CHECK(a.c == b.c);
    CHECK(*a.witness_x0 == *b.witness_x0);
}

TEST_CASE("generate_socp rejects bad dimensions") {
    CHECK_THROWS_AS(generate_socp(1, 1, 0.1, 0), DimensionError);
    CHECK_THROWS_AS(generate_socp(8, 8, 0.1, 0), DimensionError);
    CHECK_THROWS_AS(generate_socp(8, 0, 0.1, 0), DimensionError);
}

TEST_CASE("generate_socp leaves no empty rows") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto p = generate_socp(16, 8, 0.1, seed);
        for (int i = 0; i < p.m; ++i) CHECK_FALSE(p.A.row(i).isZero(0.0));
    }
}

TEST_CASE("generate_qcqp witness satisfies every constraint") {
    auto p = generate_qcqp(16, 2, 4, 0.2, 7);
    REQUIRE(p.witness_x0.has_value());
    const Vector& x0 = *p.witness_x0;
    CHECK((p.A * x0 - p.b).norm() == 0.0);
    for (const auto& qc : p.constraints) CHECK(x0.dot(qc.P * x0) <= qc.r);
    CHECK(validate(p).ok());
}

TEST_CASE("generate_qcqp constraint matrices are PSD") {
    auto p = generate_qcqp(12, 3, 3, 0.3, 11);
    for (const auto& qc : p.constraints) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(qc.P);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
}

TEST_CASE("generate_qcqp is deterministic") {
    auto a = generate_qcqp(16, 2, 4, 0.2, 3);
    auto b = generate_qcqp(16, 2, 4, 0.2, 3);
    CHECK(a.P0 == b.P0);
    CHECK(a.A == b.A);
    CHECK(a.b == b.b);
    for (std::size_t i = 0; i < a.constraints.size(); ++i) {
        CHECK(a.constraints[i].P == b.constraints[i].P);
        CHECK(a.constraints[i].r == b.constraints[i].r);
    }
}

TEST_CASE("problem files round-trip exactly") {
    SUBCASE("socp") {
        auto p = generate_socp(12, 5, 0.15, 99);
        std::stringstream ss;
        write_problem(p, ss);
        auto loaded = std::get<SocpProblem>(read_problem(ss));
        CHECK(loaded.n == p.n);
        CHECK(loaded.m == p.m);
        CHECK(loaded.A == p.A);
        CHECK(loaded.b == p.b);
        CHECK(loaded.c == p.c);
        CHECK(*loaded.witness_x0 == *p.witness_x0);
    }
    SUBCASE("qcqp") {
        auto p = generate_qcqp(10, 2, 3, 0.4, 5);
        std::stringstream ss;
        write_problem(p, ss);
        auto loaded = std::get<QcqpProblem>(read_problem(ss));
        CHECK(loaded.P0 == p.P0);
        CHECK(loaded.A == p.A);
        CHECK(loaded.b == p.b);
        REQUIRE(loaded.constraints.size() == p.constraints.size());
        for (std::size_t i = 0; i < p.constraints.size(); ++i) {
            CHECK(loaded.constraints[i].P == p.constraints[i].P);
            CHECK(loaded.constraints[i].r == p.constraints[i].r);
        }
    }
}

TEST_CASE("dense matrix encoding parses too") {
    // Hand-written document using the dense form for A.
    std::stringstream ss(
        R"({"kind":"socp","n":2,"m":1,"c":[0,1],"a":[[1,0]],"b":[1]})");
    auto p = std::get<SocpProblem>(read_problem(ss));
    CHECK(p.A(0, 0) == 1.0);
    CHECK(p.A(0, 1) == 0.0);
    CHECK_FALSE(p.witness_x0.has_value());
}
