#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gstlab/jacobi.hpp"
#include "gstlab/transforms.hpp"

using namespace gstlab;

namespace {

// Independent three-term recurrence evaluation.
double jacobi_recurrence(double g, double b, int n, double x) {
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double pcur = 0.5 * (g + b + 2.0) * x + 0.5 * (g - b);
    for (int m = 2; m <= n; ++m) {
        const double a1 = 2.0 * m * (m + g + b) * (2.0 * m + g + b - 2.0);
        const double a2 = (2.0 * m + g + b - 1.0) * (g * g - b * b);
        const double a3 = (2.0 * m + g + b - 2.0) * (2.0 * m + g + b - 1.0) * (2.0 * m + g + b);
        const double a4 = 2.0 * (m + g - 1.0) * (m + b - 1.0) * (2.0 * m + g + b);
        const double next = ((a2 + a3 * x) * pcur - a4 * pm1) / a1;
        pm1 = pcur;
        pcur = next;
    }
    return pcur;
}

} // namespace

TEST_CASE("jacobi polynomial basics") {
    CHECK(jacobi_poly({0.7, -0.2, 0}, 0.3) == 1.0);
    // Legendre P1(x) = x
    for (double x : {-0.9, -0.2, 0.0, 0.5, 1.0})
        CHECK(jacobi_poly({0.0, 0.0, 1}, x) == doctest::Approx(x).epsilon(1e-14));
    // endpoint values: P_n(1) = (gamma+1)_n / n!
    CHECK(jacobi_poly({0.5, 1.5, 3}, 1.0) ==
          doctest::Approx(pochhammer(1.5, 3) / 6.0).epsilon(1e-13));
    // P_n(-1) = (-1)^n (beta+1)_n / n!
    CHECK(jacobi_poly({0.5, 1.5, 3}, -1.0) ==
          doctest::Approx(-pochhammer(2.5, 3) / 6.0).epsilon(1e-13));
    CHECK_THROWS_AS(jacobi_poly({-1.2, 0.0, 1}, 0.0), ParameterError);
    CHECK_THROWS_AS(jacobi_poly({0.0, 0.0, -1}, 0.0), ParameterError);
}

TEST_CASE("jacobi against the three-term recurrence") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> par(-0.9, 2.5), xs(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double g = par(rng), b = par(rng), x = xs(rng);
        for (int n = 0; n <= 20; ++n)
            CHECK(std::abs(jacobi_poly({g, b, n}, x) - jacobi_recurrence(g, b, n, x)) < 1e-11);
    }
}

TEST_CASE("jacobi orthogonality under the matching beta measure") {
    const BetaParams p{0.5, 1.5};
    const MeasureSpec m = beta_measure(p);
    const Complex ip = integrate(m, [&](double x) {
        return Complex(jacobi_poly({p.gamma, p.beta, 2}, x) * jacobi_poly({p.gamma, p.beta, 3}, x));
    }).value;
    CHECK(std::abs(ip) < 1e-10);
}

TEST_CASE("ultraspherical polynomials") {
    CHECK(ultraspherical_poly(1.0, 0, 0.3) == 1.0);
    // C_1^(alpha)(x) = 2 alpha x
    CHECK(ultraspherical_poly(1.0, 1, 0.3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(ultraspherical_poly(0.7, 1, -0.4) == doctest::Approx(2.0 * 0.7 * -0.4).epsilon(1e-14));
    // parity
    CHECK(ultraspherical_poly(1.3, 5, -0.7) ==
          doctest::Approx(-ultraspherical_poly(1.3, 5, 0.7)).epsilon(1e-13));
    CHECK_THROWS_AS(ultraspherical_poly(0.0, 1, 0.3), ParameterError);
    CHECK_THROWS_AS(ultraspherical_poly(-0.6, 1, 0.3), ParameterError);
}

TEST_CASE("kernel expansion coefficients") {
    // n = 0 coefficient is the closed-form transform itself
    for (double lam : {1.0, 2.0}) {
        const BetaParams p{0.5, 0.5};
        const Complex c0 = kernel_expansion_coeff(lam, p, 0, Complex(2.0, 1.0));
        CHECK(std::abs(c0 - gst_beta_closed(lam, p, Complex(2.0, 1.0)).value) < 1e-13);
    }
    // large z: coefficient ~ const * z^-(n+1) at lambda = 1
    {
        const BetaParams p{0.3, 2.1};
        const Complex z(100.0, 0.0);
        for (int n : {1, 2}) {
            const Complex c = kernel_expansion_coeff(1.0, p, n, z);
            const Complex c2 = kernel_expansion_coeff(1.0, p, n, 2.0 * z);
            CHECK(std::abs(c / c2) == doctest::Approx(std::pow(2.0, n + 1)).epsilon(0.05));
        }
    }
    // decay along n for a point at moderate distance
    {
        const BetaParams p{0.5, 0.5};
        double prev = 1e300;
        for (int n = 3; n <= 10; ++n) {
            const double mag = std::abs(kernel_expansion_coeff(2.0, p, n, Complex(2.0, 1.0)));
            CHECK(mag < prev);
            prev = mag;
        }
    }
    CHECK_THROWS_AS(kernel_expansion_coeff(1.0, {0.5, 0.5}, 0, Complex(0.5)), CutError);
}

TEST_CASE("kernel reconstruction converges to the kernel") {
    // frozen case: lambda = 1, x = 0, z = 3 -> 1/3
    const Complex r = kernel_reconstruct(1.0, {0.5, 0.5}, Complex(3.0), 0.0, {40});
    CHECK(std::abs(r - 1.0 / 3.0) < 1e-10);

    const Complex z(2.0, 1.0);
    const Complex r2 = kernel_reconstruct(2.0, {0.5, 0.5}, z, 0.9, {40});
    CHECK(std::abs(r2 - cpow(z - 0.9, -2.0)) < 1e-8);

    // n_max = 0 is the constant coefficient
    const Complex r0 = kernel_reconstruct(1.5, {0.3, 2.1}, z, 0.4, {0});
    CHECK(std::abs(r0 - kernel_expansion_coeff(1.5, {0.3, 2.1}, 0, z)) == 0.0);

    CHECK_THROWS_AS(kernel_reconstruct(1.0, {0.5, 0.5}, z, 1.5, {10}), ParameterError);
}

TEST_CASE("projection of the truncated expansion reproduces the closed form") {
    const BetaParams p{0.3, 2.1};
    const MeasureSpec m = beta_measure(p);
    const Complex z(2.5, 0.0);
    for (double lam : {1.0, 2.0}) {
        const Complex proj =
            integrate(m, [&](double x) { return kernel_reconstruct(lam, p, z, x, {24}); }).value;
        CHECK(std::abs(proj - gst_beta_closed(lam, p, z).value) < 1e-9);
    }
}
