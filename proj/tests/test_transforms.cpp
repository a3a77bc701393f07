#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gstlab/transforms.hpp"

using namespace gstlab;

TEST_CASE("quadrature transform on atoms and classic measures") {
    // two atoms: 1/2 (1/(z-1) + 1/(z+1)) at z = 2
    const GstResult atoms = gst_quadrature(1.0, bernoulli_sym(), Complex(2.0));
    CHECK(std::abs(atoms.value - Complex(2.0 / 3.0)) < 1e-15);
    CHECK(atoms.method == GstMethod::quadrature);

    // uniform on [-1,1]: (1/2) log(3) at z = 2
    const GstResult uni = gst_quadrature(1.0, beta_measure({0.0, 0.0}), Complex(2.0));
    CHECK(std::abs(uni.value.real() - 0.5 * std::log(3.0)) < 1e-12);

    // large-|z| normalization z^lambda G -> 1, |z| = 1e6
    for (double lam : {0.5, 1.0, 3.5}) {
        const Complex z(0.0, 1e6);
        const Complex v = gst_quadrature(lam, wigner(), z).value;
        CHECK(std::abs(cpow(z, lam) * v - 1.0) < 1e-5);
    }

    CHECK_THROWS_AS(gst_quadrature(1.0, wigner(), Complex(0.5, 0.0)), SupportError);
    CHECK_THROWS_AS(gst_quadrature(0.0, wigner(), Complex(2.0)), ParameterError);
}

TEST_CASE("named ordinary transforms") {
    CHECK(std::abs(stieltjes_wigner(Complex(2.0)) - 2.0 / (2.0 + std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(stieltjes_wigner(Complex(2.0)) - 0.5358983848622454) < 1e-12);
    CHECK(std::abs(stieltjes_bernoulli(Complex(2.0)) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(stieltjes_arcsine(Complex(2.0)) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(stieltjes_free_poisson(Complex(2.0)) - 2.0 / (2.0 + std::sqrt(2.0))) < 1e-15);

    // functional identity 1 + G^2/4 = z G at z = 3 + 2i
    const Complex z(3.0, 2.0);
    const Complex g = stieltjes_wigner(z);
    CHECK(std::abs(1.0 + 0.25 * g * g - z * g) < 1e-13);

    CHECK_THROWS_AS(stieltjes_wigner(Complex(0.3)), CutError);
    CHECK_THROWS_AS(stieltjes_free_poisson(Complex(0.5)), CutError);
}

TEST_CASE("beta closed forms against quadrature") {
    // lambda = 1, Wigner parameters: G_W(2)
    const GstResult g1 = gst_beta_closed(1.0, {0.5, 0.5}, Complex(2.0));
    CHECK(g1.method == GstMethod::closed_form);
    CHECK(std::abs(g1.value - stieltjes_wigner(Complex(2.0))) < 1e-13);

    // lambda = 2, gamma = beta = 3/2: the squared Wigner transform
    const GstResult g2 = gst_beta_closed(2.0, {1.5, 1.5}, Complex(2.0));
    CHECK(std::abs(g2.value.real() - 0.28718707889796444) < 1e-10);
    const Complex gw = stieltjes_wigner(Complex(2.0));
    CHECK(std::abs(g2.value - gw * gw) < 1e-12);

    for (const BetaParams p : {BetaParams{0.3, 2.1}, BetaParams{-0.5, -0.5}}) {
        const MeasureSpec m = beta_measure(p);
        for (double lam : {0.5, 1.0, 2.5}) {
            for (const Complex z : {Complex(2.0, 0.0), Complex(-1.0, 0.8), Complex(0.5, -1.5)}) {
                const Complex quad = gst_quadrature(lam, m, z).value;
                CHECK(std::abs(gst_beta_closed(lam, p, z).value - quad) < 1e-9);
                CHECK(std::abs(gst_beta_closed_alt(lam, p, z).value - quad) < 1e-9);
            }
        }
    }
    // the two closed forms agree tightly off the cut
    CHECK(std::abs(gst_beta_closed(1.7, {0.3, 2.1}, Complex(2.0, 1.0)).value -
                   gst_beta_closed_alt(1.7, {0.3, 2.1}, Complex(2.0, 1.0)).value) < 1e-12);

    CHECK_THROWS_AS(gst_beta_closed(1.0, {0.5, 0.5}, Complex(0.0)), CutError);
    CHECK_THROWS_AS(gst_beta_closed(1.0, {0.5, 0.5}, Complex(-4.0)), CutError);
}

TEST_CASE("symmetric beta transform as powers of the Wigner transform") {
    // k = 0: plain power
    const Complex z(2.5, 0.0);
    for (double lam : {0.6, 1.3, 2.0}) {
        const Complex expect = cpow(stieltjes_wigner(z), lam);
        CHECK(std::abs(gst_symmetric_beta_wigner_form(lam, 0, z).value - expect) < 1e-13);
    }
    // k = 1: arcsine times a lower power
    {
        const double lam = 2.2;
        const Complex expect = stieltjes_arcsine(z) * cpow(stieltjes_wigner(z), lam - 1.0);
        CHECK(std::abs(gst_symmetric_beta_wigner_form(lam, 1, z).value - expect) < 1e-13);
    }
    // k = 2, lambda = 3 against quadrature on beta(1/2, 1/2)
    {
        const Complex closed = gst_symmetric_beta_wigner_form(3.0, 2, Complex(2.5)).value;
        const Complex quad = gst_quadrature(3.0, beta_measure({0.5, 0.5}), Complex(2.5)).value;
        CHECK(std::abs(closed - quad) < 1e-9);
    }
    CHECK_THROWS_AS(gst_symmetric_beta_wigner_form(0.4, 1, Complex(2.0)), ParameterError);
}

TEST_CASE("nonsymmetric beta transform via the Wigner variable") {
    // k = 1, lambda = 2 against quadrature on beta(3/2, 1/2)
    {
        const Complex closed = gst_nonsymmetric_beta_wigner_form(2.0, 1, false, Complex(2.0)).value;
        const Complex quad = gst_quadrature(2.0, beta_measure({1.5, 0.5}), Complex(2.0)).value;
        CHECK(std::abs(closed - quad) < 1e-9);
    }
    // swapped orientation
    {
        const Complex closed =
            gst_nonsymmetric_beta_wigner_form(2.5, 2, true, Complex(1.4, 1.1)).value;
        const Complex quad = gst_quadrature(2.5, beta_measure({0.0, 2.0}), Complex(1.4, 1.1)).value;
        CHECK(std::abs(closed - quad) < 1e-9);
    }
    // square relation behind the half-integer powers
    const Complex z(2.0, 1.0);
    const Complex g = stieltjes_wigner(z);
    CHECK(std::abs((1.0 + 0.5 * g) * (1.0 + 0.5 * g) - (z + 1.0) * g) < 1e-13);

    CHECK_THROWS_AS(gst_nonsymmetric_beta_wigner_form(1.0, 0, false, Complex(2.0)), ParameterError);
    CHECK_THROWS_AS(gst_nonsymmetric_beta_wigner_form(0.4, 1, false, Complex(2.0)), ParameterError);
}

TEST_CASE("bernoulli power identity") {
    CHECK(bernoulli_power_residual(1.0, Complex(2.0)) < 1e-14);
    CHECK(bernoulli_power_residual(2.0, Complex(2.0, 1.0)) < 1e-8);
    CHECK(bernoulli_power_residual(3.5, Complex(1.5, 0.0)) < 1e-8);
    CHECK_THROWS_AS(bernoulli_power_residual(0.9, Complex(2.0)), ParameterError);
}

TEST_CASE("shrinkage identity") {
    // p = 1/2, lambda = 2: uniform measure against 1/(z^2-1)
    {
        const Complex z(2.0, 0.5);
        const Complex lhs = gst_quadrature(2.0, beta_measure({0.0, 0.0}), z).value;
        CHECK(std::abs(lhs - 1.0 / (z * z - 1.0)) < 1e-11);
        CHECK(shrinkage_residual(2.0, 0.5, z) < 1e-11);
    }
    CHECK(shrinkage_residual(3.0, 0.5, Complex(2.0)) < 1e-9);
    CHECK(shrinkage_residual(4.0, 0.3, Complex(1.2, 0.7)) < 1e-9);
    CHECK_THROWS_AS(shrinkage_residual(2.0, 1.2, Complex(2.0)), ParameterError);
    CHECK_THROWS_AS(shrinkage_residual(2.0, 0.5, Complex(0.0)), CutError);
}

TEST_CASE("kappa reduction identity") {
    CHECK(kappa_reduction_residual(2.0, beta_measure({0.0, 0.0}), Complex(3.0)) < 1e-7);
    CHECK(kappa_reduction_residual(1.0, wigner(), Complex(2.0)) < 1e-7);
    // decay consistency: both sides ~ z^-lambda at large |z|
    const Complex big(0.0, 50.0);
    CHECK(kappa_reduction_residual(1.0, wigner(), big) < 1e-9);
}

TEST_CASE("free Poisson convolution identity") {
    // right side at z = 2: 2/(2+sqrt(2))
    const FreePoissonResiduals r1 = free_poisson_residuals(1.0, Complex(2.0, 0.5));
    CHECK(r1.double_quadrature < 1e-7);
    CHECK(r1.closed_density < 1e-8);
    const FreePoissonResiduals r2 = free_poisson_residuals(2.0, Complex(1.5, 1.0));
    CHECK(r2.double_quadrature < 1e-7);
    CHECK(r2.closed_density < 1e-8);

    // two closed expressions of the free Poisson transform
    const Complex z(2.0, 3.0);
    const Complex a = 2.0 / (z + sqrt_zzm1(z));
    const Complex b = 2.0 * (z - std::sqrt((z - 0.5) * (z - 0.5) - 0.25)) / z;
    CHECK(std::abs(a - b) < 1e-13);
}

TEST_CASE("power relation check") {
    EvalGrid grid;
    grid.points = {Complex(2.0, 0.5), Complex(-1.5, 1.0), Complex(0.3, 2.0), Complex(3.0, 0.0)};
    // trivial at lambda = 1
    const VerificationSummary trivial = power_relation_check(1.0, wigner(), wigner(), grid);
    CHECK(trivial.max_residual < 1e-14);
    // Wigner power family
    const VerificationSummary w =
        power_relation_check(2.5, beta_measure({2.0, 2.0}), wigner(), grid);
    CHECK(w.max_residual < 1e-8);
    CHECK(w.count == 4);
    // Bernoulli power family
    const VerificationSummary b =
        power_relation_check(2.0, bernoulli_power_measure(2.0), bernoulli_sym(), grid);
    CHECK(b.max_residual < 1e-8);
}

TEST_CASE("conjugation and Nevanlinna behaviour") {
    const MeasureSpec m = beta_measure({0.3, 2.1});
    for (double lam : {0.5, 1.7}) {
        const Complex z(1.3, 0.9);
        const Complex a = gst_quadrature(lam, m, std::conj(z)).value;
        CHECK(std::abs(a - std::conj(gst_quadrature(lam, m, z).value)) < 1e-13);
    }
    for (const Complex z : {Complex(0.5, 0.8), Complex(-2.0, 0.3), Complex(1.0, 2.0)}) {
        for (const MeasureSpec& nu : {wigner(), bernoulli_sym(), free_poisson_quarter()}) {
            const Complex g = gst_quadrature(1.0, nu, z).value;
            CHECK((std::sqrt(g) / std::sqrt(z)).imag() < 0.0);
        }
    }
}

TEST_CASE("grid construction") {
    const EvalGrid g = EvalGrid::standard();
    CHECK(g.points.size() == 75);
    EvalGrid h = EvalGrid::rectangle(-1.0, 1.0, 0.5, {0.0, 1.0});
    h.exclude_real_ray(1.0);
    CHECK(h.points.size() == 5); // the Im = 0 row dies against the cut
    EvalGrid k = EvalGrid::rectangle(-1.0, 1.0, 0.5, {0.0});
    k.exclude_near(-1.0, 1.0, 1e-6);
    CHECK(k.points.empty());
}
