#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dyscert/class_geometry.hpp"

using namespace dyscert;

TEST_CASE("smoothness parsing")
{
    CHECK_FALSE(Smoothness::parse("inf").is_finite());
    CHECK(Smoothness::parse("1.25").value() == 1.25);
    CHECK(Smoothness::parse("0").value() == 0.0);
    CHECK_THROWS_AS(Smoothness::parse("abc"), DomainError);
    CHECK_THROWS_AS(Smoothness::parse("1.5x"), DomainError);
    CHECK_THROWS_AS(Smoothness::parse("-1"), DomainError);
    CHECK_THROWS_AS(Smoothness::infinite().value(), DomainError);
    CHECK(Smoothness::infinite().to_string() == "inf");
}

TEST_CASE("function class invariants")
{
    CHECK_NOTHROW(FunctionClass::smooth(0.0, 1.0));
    CHECK_NOTHROW(FunctionClass::smooth(2.0, 2.0));
    CHECK_NOTHROW(FunctionClass::nonsmooth(3.0));
    CHECK_THROWS_AS(FunctionClass::smooth(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(FunctionClass::smooth(1.0, 0.5), DomainError);

    try {
        FunctionClass::checked(1.0, Smoothness::finite(0.5), "f");
        FAIL("expected DomainError");
    }
    catch (const DomainError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("mu_f") != std::string::npos);
        CHECK(msg.find("L_f") != std::string::npos);
    }
}

TEST_CASE("algo params and circles validate")
{
    CHECK_THROWS_AS(AlgoParams(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(AlgoParams(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(CircleSpec(0.0, -1e-3), DomainError);
}

TEST_CASE("resolvent_srg examples")
{
    SUBCASE("maximal monotone class")
    {
        const auto c = resolvent_srg(FunctionClass::nonsmooth(0.0), 1.0);
        CHECK(c.center == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("reference f-class")
    {
        // Frozen from a 30-digit evaluation of 1/(1+0.63) and 1/(1+1.35).
        const auto c = resolvent_srg(FunctionClass::smooth(0.7, 1.5), 0.9);
        CHECK(std::abs(c.center - 0.519514423704477222) < 1e-15);
        CHECK(std::abs(c.radius - 0.0939825088108602010) < 1e-15);
    }
    SUBCASE("degenerate class collapses to a point")
    {
        const auto c = resolvent_srg(FunctionClass::smooth(2.0, 2.0), 0.5);
        CHECK(c.center == 0.5);
        CHECK(c.radius == 0.0);
    }
}

TEST_CASE("resolvent_srg endpoints and curvature containment")
{
    for (double alpha : {0.05, 0.3, 1.0, 1.9}) {
        for (auto [mu, L] : {std::pair{0.0, 1.0}, std::pair{0.5, 7.0},
                             std::pair{2.0, 2.5}, std::pair{0.0, 10.0}}) {
            const auto c = resolvent_srg(FunctionClass::smooth(mu, L), alpha);
            CHECK(std::abs(c.leftmost() - 1.0 / (1.0 + alpha * L)) < 1e-15);
            CHECK(std::abs(c.rightmost() - 1.0 / (1.0 + alpha * mu)) < 1e-15);
            CHECK(c.leftmost() > 0.0);
            CHECK(c.rightmost() <= 1.0);
            for (int k = 0; k <= 50; ++k) {
                const double curv = mu + (L - mu) * k / 50.0;
                const double z = 1.0 / (1.0 + alpha * curv);
                CHECK(z >= c.leftmost() - 1e-15);
                CHECK(z <= c.rightmost() + 1e-15);
            }
        }
    }
}

TEST_CASE("gradient_srg")
{
    auto c = gradient_srg(FunctionClass::smooth(0.8, 1.3));
    CHECK(c.center == doctest::Approx(1.05).epsilon(1e-15));
    CHECK(c.radius == doctest::Approx(0.25).epsilon(1e-14));
    c = gradient_srg(FunctionClass::smooth(0.0, 2.0));
    CHECK(c.center == 1.0);
    CHECK(c.radius == 1.0);
    c = gradient_srg(FunctionClass::smooth(1.0, 1.0));
    CHECK(c.center == 1.0);
    CHECK(c.radius == 0.0);

    try {
        gradient_srg(FunctionClass::nonsmooth(0.0));
        FAIL("expected DomainError");
    }
    catch (const DomainError& e) {
        CHECK(std::string(e.what()) == "gradient SRG requires finite smoothness");
    }

    // Boundary points have real part in [mu, L] and sit on the circle.
    const auto cls = FunctionClass::smooth(0.3, 4.0);
    const auto circle = gradient_srg(cls);
    for (const auto& z : sample_circle_boundary(circle, 97)) {
        CHECK(z.real() >= 0.3 - 1e-14);
        CHECK(z.real() <= 4.0 + 1e-14);
        CHECK(std::abs(std::abs(z - 2.15) - 1.85) < 1e-14);
    }
}

TEST_CASE("sample_circle_boundary examples")
{
    auto pts = sample_circle_boundary(CircleSpec(0.0, 1.0), 4);
    REQUIRE(pts.size() == 4);
    const std::complex<double> expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(pts[k] - expected[k]) < 1e-15);
    }

    pts = sample_circle_boundary(CircleSpec(0.5, 0.5), 2);
    CHECK(std::abs(pts[0] - 1.0) < 1e-15);
    CHECK(std::abs(pts[1] - 0.0) < 1e-15);

    pts = sample_circle_boundary(CircleSpec(1.05, 0.25), 1);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == std::complex<double>(1.3, 0.0));

    pts = sample_circle_boundary(CircleSpec(0.7, 0.0), 5);
    CHECK(std::all_of(pts.begin(), pts.end(),
                      [](auto z) { return z == std::complex<double>(0.7, 0.0); }));

    CHECK_THROWS_AS(sample_circle_boundary(CircleSpec(0.0, 1.0), 0), DomainError);
}

TEST_CASE("boundary samples are conjugate-symmetric")
{
    // Point k mirrors to point n-k under conjugation.
    for (std::size_t n : {1u, 2u, 7u, 64u, 255u}) {
        const auto pts = sample_circle_boundary(CircleSpec(0.4, 0.3), n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto mirror = pts[(n - k) % n];
            CHECK(std::abs(std::conj(pts[k]) - mirror) < 1e-15);
        }
    }
}

TEST_CASE("nested grids reproduce identical angles")
{
    for (std::size_t n : {1u, 4u, 32u, 128u}) {
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(sample_angle(k, n) == sample_angle(2 * k, 2 * n));
        }
    }
}

TEST_CASE("infinite-modulus helpers")
{
    CHECK(resolvent_gain(1.0, Smoothness::infinite()) == 0.0);
    CHECK(resolvent_gain(0.5, Smoothness::finite(2.0)) == 0.5);
    CHECK(curvature_weight(1.0, Smoothness::infinite(), 3.0) == 0.0);
    // (2*1 + 0.5)/(1 + 1)^2
    CHECK(curvature_weight(1.0, 1.0, 0.5) == doctest::Approx(0.625));
}
