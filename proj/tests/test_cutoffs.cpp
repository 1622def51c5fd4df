#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skdv/cutoffs.hpp"

#include <cmath>
#include <limits>

using namespace skdv::cutoffs;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("bump plateau, support and range") {
    CHECK(bump(0.0) == 1.0);
    CHECK(bump(1.0) == 1.0);
    CHECK(bump(-0.7) == 1.0);
    CHECK(bump(2.0) == 0.0);
    CHECK(bump(-3.1) == 0.0);
    for (double x = -3.0; x <= 3.0; x += 0.01) {
        CHECK(bump(x) >= 0.0);
        CHECK(bump(x) <= 1.0);
        CHECK(bump(x) == bump(-x));
    }
}

TEST_CASE("bump is monotone decreasing on the transition band") {
    double prev = 1.0;
    for (double x = 1.0; x <= 2.0; x += 1e-3) {
        const double val = bump(x);
        CHECK(val <= prev + 1e-15);
        prev = val;
    }
    CHECK(bump(1.5) > 0.0);
    CHECK(bump(1.5) < 1.0);
}

TEST_CASE("bump derivatives match finite differences") {
    const double h = 1e-6;
    for (double x : {1.1, 1.3, 1.5, 1.7, 1.9, -1.4, -1.8}) {
        const double fd1 = (bump(x + h) - bump(x - h)) / (2.0 * h);
        CHECK(bump_d1(x) == doctest::Approx(fd1).epsilon(1e-5));
        const double fd2 = (bump(x + h) - 2.0 * bump(x) + bump(x - h)) / (h * h);
        CHECK(bump_d2(x) == doctest::Approx(fd2).epsilon(1e-3));
    }
    CHECK(bump_d1(0.5) == 0.0);
    CHECK(bump_d1(2.5) == 0.0);
}

TEST_CASE("phi_K plateau and support scale with K") {
    CHECK_THROWS_AS(phi_K(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi_K(1.0, -2.0), std::invalid_argument);
    CHECK(phi_K(0.5, 1.0) == 1.0);
    CHECK(phi_K(3.0, 1.0) == 0.0);
    CHECK(phi_K(1.5, 1.0) > 0.0);
    CHECK(phi_K(1.5, 1.0) < 1.0);
    CHECK(phi_K(9.0, 10.0) == 1.0);
    CHECK(phi_K(25.0, 10.0) == 0.0);
    CHECK(phi_K(1e6, kInf) == 1.0);
}

TEST_CASE("psi_K is the derivative of x phi_K(x)") {
    CHECK(psi_K(0.9, 1.0) == 1.0);
    CHECK(psi_K(2.5, 1.0) == 0.0);
    CHECK(psi_K(0.9 * 4.0, 4.0) == 1.0);
    const double h = 1e-6;
    for (double K : {1.0, 3.0}) {
        for (int i = 0; i < 1000; ++i) {
            const double x = -2.5 * K + 5.0 * K * i / 999.0;
            const double fd =
                ((x + h) * phi_K(x + h, K) - (x - h) * phi_K(x - h, K)) / (2.0 * h);
            CHECK(std::abs(psi_K(x, K) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
    // Finite-difference oracle at the specific transition point.
    const double x = 1.5, K = 1.0;
    const double fd = ((x + h) * phi_K(x + h, K) - (x - h) * phi_K(x - h, K)) / (2.0 * h);
    CHECK(psi_K(x, K) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("psi1/psi2 plateau antiderivatives") {
    const double K = 2.0;
    CHECK(psi1_K(K / 2.0, K) == doctest::Approx(K * K / 8.0).epsilon(1e-14));
    CHECK(psi2_K(-K / 2.0, K) == doctest::Approx(-K * K * K / 24.0).epsilon(1e-14));
    CHECK(psi1_K(3.0, kInf) == doctest::Approx(4.5));
    CHECK(psi2_K(-3.0, kInf) == doctest::Approx(-9.0));
    CHECK_THROWS_AS(psi1_K(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("psi1 tail matches a brute-force Riemann sum") {
    const double K = 1.0, x = 3.0;
    const std::size_t panels = 1000000;
    double sum = 0.0;
    const double h = x / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * h;
        sum += s * phi_K(s, K) * h;
    }
    CHECK(psi1_K(x, K) == doctest::Approx(sum).epsilon(1e-8));
}

TEST_CASE("psi2 tail matches a brute-force Riemann sum") {
    const double K = 1.5, x = 4.0;
    const std::size_t panels = 400000;
    double sum = 0.0;
    const double h = x / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * h;
        sum += s * s * phi_K(s, K) * h;
    }
    CHECK(psi2_K(x, K) == doctest::Approx(sum).epsilon(1e-8));
    CHECK(psi2_K(-x, K) == doctest::Approx(-sum).epsilon(1e-8));
}

TEST_CASE("psi bounds hold at sampled points") {
    for (double K : {1.0, 10.0, 100.0}) {
        for (double x = 0.0; x <= 3.0 * K; x += K / 50.0) {
            CHECK(psi1_K(x, K) <= 0.5 * x * x + 1e-12);
            CHECK(std::abs(psi2_K(x, K)) <= x * x * x / 3.0 + 1e-12);
        }
    }
}

TEST_CASE("large-K limits approach the uncut values") {
    const double x = 0.8;
    for (double K : {1.0, 10.0, 100.0}) {
        CHECK(phi_K(x, K) == 1.0);  // x inside every plateau here
        CHECK(psi_K(x, K) == 1.0);
        CHECK(psi1_K(x, K) == doctest::Approx(0.5 * x * x));
        CHECK(psi2_K(x, K) == doctest::Approx(x * x * x / 3.0));
    }
    // A point outside the K=1 plateau is recovered as K grows.
    const double y = 1.7;
    CHECK(psi1_K(y, 1.0) < 0.5 * y * y);
    CHECK(psi1_K(y, 10.0) == doctest::Approx(0.5 * y * y));
}

TEST_CASE("tail profile plateaus") {
    CHECK(tail_profile(0.3) == 0.0);
    CHECK(tail_profile(0.5) == 0.0);
    CHECK(tail_profile(1.0) == 1.0);
    CHECK(tail_profile(-2.7) == 1.0);
    CHECK(tail_profile(0.75) > 0.0);
    CHECK(tail_profile(0.75) < 1.0);
}
