#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gstlab/quadrature.hpp"

using namespace gstlab;

TEST_CASE("polynomial and smooth integrands") {
    auto r = tanh_sinh([](double x, double, double) { return Complex(x * x); }, 0.0, 1.0);
    CHECK(std::abs(r.value.real() - 1.0 / 3.0) < 1e-14);

    r = tanh_sinh([](double x, double, double) { return Complex(std::exp(x)); }, -1.0, 2.0);
    CHECK(std::abs(r.value.real() - (std::exp(2.0) - std::exp(-1.0))) < 1e-12);
}

TEST_CASE("endpoint singularities via the distance arguments") {
    // int_0^1 x^(-1/2) dx = 2
    auto r = tanh_sinh([](double, double dlo, double) { return Complex(1.0 / std::sqrt(dlo)); },
                       0.0, 1.0);
    CHECK(std::abs(r.value.real() - 2.0) < 1e-12);

    // int_0^1 x^(-1/2) (1-x)^(-1/2) dx = pi
    r = tanh_sinh(
        [](double, double dlo, double dhi) { return Complex(1.0 / std::sqrt(dlo * dhi)); }, 0.0,
        1.0);
    CHECK(std::abs(r.value.real() - std::numbers::pi) < 1e-12);

    // strong singularity x^(-0.75)
    r = tanh_sinh([](double, double dlo, double) { return Complex(std::pow(dlo, -0.75)); }, 0.0,
                  1.0);
    CHECK(std::abs(r.value.real() - 4.0) < 1e-11);
}

TEST_CASE("beta integral against the gamma-function value") {
    const double g = 1.3, b = -0.4;
    auto r = tanh_sinh(
        [&](double, double dlo, double dhi) {
            return Complex(std::pow(dhi, g) * std::pow(dlo, b));
        },
        -1.0, 1.0);
    const double expected = std::exp((g + b + 1.0) * std::numbers::ln2 + std::lgamma(g + 1.0) +
                                     std::lgamma(b + 1.0) - std::lgamma(g + b + 2.0));
    CHECK(std::abs(r.value.real() - expected) < 1e-12 * expected);
}

TEST_CASE("complex-valued kernel") {
    const Complex z(2.0, 1.0);
    auto r = tanh_sinh([&](double x, double, double) { return 1.0 / (z - x); }, -1.0, 1.0);
    const Complex expected = std::log(z + 1.0) - std::log(z - 1.0);
    CHECK(std::abs(r.value - expected) < 1e-13);
}

TEST_CASE("odd integrand integrates to zero with a finite error estimate") {
    auto r = tanh_sinh([](double x, double, double) { return Complex(x); }, -1.0, 1.0);
    CHECK(std::abs(r.value.real()) < 1e-15);
}

TEST_CASE("invalid interval throws") {
    CHECK_THROWS_AS(tanh_sinh([](double, double, double) { return Complex(1.0); }, 1.0, 0.0),
                    QuadratureError);
}
