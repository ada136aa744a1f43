#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "ridgetail/special.hpp"

using namespace ridgetail;

TEST_CASE("gaussian tail special values") {
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gaussian_tail(std::numeric_limits<double>::infinity()) == 0.0);
    // 0.025 quantile, oracle = numerical integration of the density
    CHECK(std::abs(gaussian_tail(1.959964) - 0.0250000) < 1e-7);
    CHECK(std::abs(gaussian_tail(1.959964) - oracles::normal_tail(1.959964)) < 1e-10);
}

TEST_CASE("gaussian tail symmetry and monotonicity") {
    double prev = 1.0;
    for (double u = -8.0; u <= 8.0; u += 0.25) {
        const double psi = gaussian_tail(u);
        CHECK(std::abs(psi + gaussian_tail(-u) - 1.0) < 1e-12);
        CHECK(psi < prev);
        prev = psi;
    }
}

TEST_CASE("gauss-legendre doubling on smooth integrands") {
    const auto cubic = integrate_doubling([](double x) { return x * x * x; }, 0.0, 1.0);
    CHECK(cubic.converged);
    CHECK(cubic.value == doctest::Approx(0.25).epsilon(1e-12));
    const auto expo = integrate_doubling([](double x) { return std::exp(x); }, -1.0, 2.0);
    CHECK(expo.value == doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("beta reduced integral: anchors and the Beta identity") {
    CHECK(beta_reduced_integral(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(beta_reduced_integral(0.5, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(beta_reduced_integral(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(beta_reduced_integral(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(beta_reduced_integral(1.0, 0.0), std::domain_error);

    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double b : {0.5, 0.75, 1.0, 2.0, 3.0}) {
            const double lhs = beta_reduced_integral(a, b) * a;
            const double rhs = std::exp(log_gamma(1.0 / a) + log_gamma(b) -
                                        log_gamma(1.0 / a + b));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("beta reduced integral agrees with independent quadrature (20 cases)") {
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double b : {0.5, 0.75, 1.0, 2.0, 3.0}) {
            const double got = beta_reduced_integral(a, b);
            const double want = oracles::beta_integral_by_quadrature(a, b);
            CHECK(got == doctest::Approx(want).epsilon(1e-8));
        }
    }
}
