#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gstlab/humbert.hpp"
#include "gstlab/jacobi.hpp"
#include "gstlab/transforms.hpp"

using namespace gstlab;

TEST_CASE("generating-series coefficients") {
    // H_0 = 1 always
    CHECK(humbert_coeffs({1.3, 3}, 0.4, 0)[0] == 1.0);
    // d = 2, alpha = 1, x = 0: 1/(1+z^3) = 1 - z^3 + z^6 - ...
    const std::vector<double> h = humbert_coeffs({1.0, 2}, 0.0, 7);
    const std::vector<double> expect = {1, 0, 0, -1, 0, 0, 1, 0};
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(h[i] == doctest::Approx(expect[i]).epsilon(1e-14));
    // d = 1 reduces to ultraspherical polynomials
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double x : {-0.9, 0.0, 0.4}) {
            const std::vector<double> c = humbert_coeffs({alpha, 1}, x, 10);
            for (int n = 0; n <= 10; ++n)
                CHECK(std::abs(c[n] - ultraspherical_poly(alpha, n, x)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(humbert_coeffs({0.0, 2}, 0.0, 3), ParameterError);
    CHECK_THROWS_AS(humbert_coeffs({1.0, 0}, 0.0, 3), ParameterError);
}

TEST_CASE("generating series resubstitution") {
    for (int d : {1, 2, 3}) {
        const double alpha = 1.5, x = 0.2;
        const std::vector<double> h = humbert_coeffs({alpha, d}, x, 60);
        const Complex z = std::polar(0.1, 1.1);
        Complex sum = 0.0, zp = 1.0;
        for (int n = 0; n <= 60; ++n) {
            sum += h[n] * zp;
            zp *= z;
        }
        const Complex base = 1.0 - (d + 1.0) * x * z + ipow(z, d + 1);
        CHECK(std::abs(sum - cpow(base, -alpha)) < 1e-12);
    }
}

TEST_CASE("f_map") {
    CHECK(f_map(1, Complex(1.0)) == Complex(1.0));
    CHECK(std::abs(f_map(2, Complex(1.0)) - Complex(2.0 / 3.0)) < 1e-16);
    CHECK_THROWS_AS(f_map(2, Complex(0.0)), ZeroError);
    // inverse property through root selection
    const Complex y(0.0, 2.0);
    const TrinomialRoot r = root_select(2, y);
    CHECK(std::abs(f_map(2, r.z) - y) < 1e-12);
}

TEST_CASE("root selection") {
    // dominant balance at large |y|
    const Complex y(0.0, 1e6);
    for (int d : {1, 2, 3, 4}) {
        const TrinomialRoot r = root_select(d, y);
        CHECK(std::abs(r.z * (d + 1.0) * y - 1.0) < 1e-5);
        CHECK(r.residual <= 1e-10);
    }
    // residual invariant on a grid
    for (int d : {1, 2, 3, 4}) {
        for (double th : {0.3, 1.2, 2.4}) {
            for (double rr : {2.0, 3.5, 8.0}) {
                const TrinomialRoot r = root_select(d, std::polar(rr, th));
                CHECK(r.residual <= 1e-10);
            }
        }
    }
    // d = 1: twice the root is the Wigner transform
    for (const Complex yy : {Complex(0.0, 2.5), Complex(1.5, 2.0), Complex(-3.0, 1.0)})
        CHECK(std::abs(2.0 * root_select(1, yy).z - stieltjes_wigner(yy)) < 1e-11);

    CHECK_THROWS_AS(root_select(2, Complex(0.1, 0.1)), BranchError);
}

TEST_CASE("hypergeometric root formula at d = 2") {
    for (const Complex y : {Complex(0.0, 10.0), Complex(2.0, 2.0), Complex(0.0, 2.0)}) {
        const Complex viaf = root_via_2f1_d2(y);
        CHECK(std::abs(viaf - root_select(2, y).z) < 1e-12);
    }
    // real y beyond the branch radius: series real, root real
    const Complex real_root = root_via_2f1_d2(Complex(5.0, 0.0));
    CHECK(real_root.imag() == 0.0);
    CHECK(std::abs(trinomial_root_series(2, Complex(5.0, 0.0)) - real_root) < 1e-13);
    CHECK_THROWS_AS(root_via_2f1_d2(Complex(0.0, 0.5)), SectorError);
}

TEST_CASE("general-d root series against root finding") {
    for (int d : {2, 3, 4}) {
        for (const Complex y : {Complex(0.0, 3.0), Complex(2.0, 2.5), Complex(-1.5, 3.0),
                                Complex(4.0, 1.0), Complex(0.5, 6.0)}) {
            const Complex series = trinomial_root_series(d, y);
            CHECK(std::abs(series - root_select(d, y).z) < 1e-9);
        }
    }
    // the alternating-sign reading coincides for even d and demonstrably
    // fails for odd d; the mismatch is reported, not silently papered over
    const Complex y(0.0, 3.0);
    CHECK(std::abs(trinomial_root_series(2, y, true) - trinomial_root_series(2, y, false)) == 0.0);
    const double odd_mismatch = std::abs(trinomial_root_series(3, y, true) - root_select(3, y).z);
    CHECK(odd_mismatch > 1e-7);
    const double d1_mismatch = std::abs(trinomial_root_series(1, y, true) - root_select(1, y).z);
    CHECK(d1_mismatch > 1e-5);
}

TEST_CASE("moment functional identity at d = 2") {
    CHECK(humbert_moment_functional_residual_d2(1.0, Complex(0.0, 5.0)) < 1e-8);
    CHECK(humbert_moment_functional_residual_d2(2.5, Complex(1.0, 3.0)) < 1e-8);
    CHECK_THROWS_AS(humbert_moment_functional_residual_d2(1.0, Complex(1.0, -2.0)),
                    ParameterError);
}

TEST_CASE("normalization chain at d = 2") {
    CHECK(humbert_normalization_residual({1.0, 2}, Complex(0.0, 0.1)) < 1e-7);
    CHECK(humbert_normalization_residual({2.0, 2}, Complex(0.05, 0.05)) < 1e-7);
    // z -> 0 along the imaginary axis: the ratio tends to 1
    CHECK(humbert_normalization_residual({1.0, 2}, Complex(0.0, 0.01)) < 1e-7);
    CHECK_THROWS_AS(humbert_normalization_residual({1.0, 3}, Complex(0.0, 0.1)), ParameterError);
    CHECK_THROWS_AS(humbert_normalization_residual({1.0, 2}, Complex(0.0, 0.5)), ParameterError);
}
