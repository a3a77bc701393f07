#include "gstlab/transforms.hpp"

#include <cmath>
#include <numbers>

namespace gstlab {

namespace {

constexpr double kSupportMargin = 1e-6;

void check_off_cut(Complex z, const char* what) {
    if (z.imag() == 0.0 && z.real() <= 1.0 + kSupportMargin)
        throw CutError(std::string(what) + ": point on or near the cut (-inf, 1]");
}

void check_lambda(double lambda, const char* what) {
    if (!(lambda > 0.0)) throw ParameterError(std::string(what) + ": lambda must be positive");
}

} // namespace

EvalGrid EvalGrid::standard() { return rectangle(-3.0, 3.0, 0.25, {0.5, 1.0, 2.0}); }

EvalGrid EvalGrid::rectangle(double re_min, double re_max, double re_step,
                             const std::vector<double>& im_values) {
    if (!(re_step > 0.0)) throw ParameterError("EvalGrid: step must be positive");
    EvalGrid g;
    const int n = static_cast<int>(std::floor((re_max - re_min) / re_step + 0.5));
    for (double im : im_values)
        for (int i = 0; i <= n; ++i) g.points.emplace_back(re_min + i * re_step, im);
    return g;
}

EvalGrid& EvalGrid::exclude_near(double lo, double hi, double margin) {
    std::vector<Complex> kept;
    kept.reserve(points.size());
    for (Complex z : points)
        if (dist_to_interval(z, lo, hi) >= margin) kept.push_back(z);
    points.swap(kept);
    return *this;
}

EvalGrid& EvalGrid::exclude_real_ray(double hi_end, double margin) {
    std::vector<Complex> kept;
    kept.reserve(points.size());
    for (Complex z : points)
        if (!(std::abs(z.imag()) < margin && z.real() <= hi_end + margin)) kept.push_back(z);
    points.swap(kept);
    return *this;
}

GstResult gst_quadrature(double lambda, const MeasureSpec& m, Complex z,
                         const QuadraturePolicy& pol) {
    check_lambda(lambda, "gst_quadrature");
    if (dist_to_interval(z, m.lo(), m.hi()) < kSupportMargin)
        throw SupportError("gst_quadrature: z in or near the support of the measure");
    const IntegralResult r =
        integrate(m, [&](double x) { return cpow(z - x, -lambda); }, pol);
    return {r.value, r.err, GstMethod::quadrature};
}

GstResult gst_beta_closed(double lambda, const BetaParams& p, Complex z, const SeriesPolicy& pol) {
    check_lambda(lambda, "gst_beta_closed");
    if (!(p.gamma > -1.0) || !(p.beta > -1.0))
        throw ParameterError("gst_beta_closed: gamma and beta must exceed -1");
    check_off_cut(z, "gst_beta_closed");
    const Complex w = 2.0 / (1.0 - z);
    const Complex cm = (1.0 + z) / (z - 1.0);
    const Complex f =
        gauss_2f1_split(lambda, p.gamma + 1.0, p.gamma + p.beta + 2.0, w, cm, pol);
    const Complex v = cpow(z - 1.0, -lambda) * f;
    ensure_finite(v, "gst_beta_closed");
    return {v, 0.0, GstMethod::closed_form};
}

GstResult gst_beta_closed_alt(double lambda, const BetaParams& p, Complex z,
                              const SeriesPolicy& pol) {
    check_lambda(lambda, "gst_beta_closed_alt");
    if (!(p.gamma > -1.0) || !(p.beta > -1.0))
        throw ParameterError("gst_beta_closed_alt: gamma and beta must exceed -1");
    check_off_cut(z, "gst_beta_closed_alt");
    const Complex w = 2.0 / (1.0 + z);
    const Complex cm = (z - 1.0) / (z + 1.0);
    const Complex f =
        gauss_2f1_split(lambda, p.beta + 1.0, p.gamma + p.beta + 2.0, w, cm, pol);
    const Complex v = cpow(z + 1.0, -lambda) * f;
    ensure_finite(v, "gst_beta_closed_alt");
    return {v, 0.0, GstMethod::closed_form};
}

Complex stieltjes_wigner(Complex z) {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0 + kSupportMargin)
        throw CutError("stieltjes_wigner: point on the support [-1, 1]");
    return 2.0 / (z + sqrt_z2m1(z));
}

Complex stieltjes_arcsine(Complex z) {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0 + kSupportMargin)
        throw CutError("stieltjes_arcsine: point on the support [-1, 1]");
    return 1.0 / sqrt_z2m1(z);
}

Complex stieltjes_bernoulli(Complex z) {
    if (z.imag() == 0.0 && (std::abs(z.real() - 1.0) < kSupportMargin ||
                            std::abs(z.real() + 1.0) < kSupportMargin))
        throw CutError("stieltjes_bernoulli: pole at +-1");
    return z / (z * z - 1.0);
}

Complex stieltjes_free_poisson(Complex z) {
    if (z.imag() == 0.0 && z.real() >= -kSupportMargin && z.real() <= 1.0 + kSupportMargin)
        throw CutError("stieltjes_free_poisson: point on the support [0, 1]");
    return 2.0 / (z + sqrt_zzm1(z));
}

GstResult gst_symmetric_beta_wigner_form(double lambda, int k, Complex z,
                                         const SeriesPolicy& pol) {
    check_lambda(lambda, "gst_symmetric_beta_wigner_form");
    if (k < 0) throw ParameterError("gst_symmetric_beta_wigner_form: k must be nonnegative");
    const double gamma = lambda - 0.5 - k;
    if (!(gamma > -1.0))
        throw ParameterError("gst_symmetric_beta_wigner_form: gamma = lambda - 1/2 - k must exceed -1");
    check_off_cut(z, "gst_symmetric_beta_wigner_form");
    const Complex g = stieltjes_wigner(z);
    const Complex g2 = g * g;
    const Complex f = gauss_2f1(static_cast<double>(k), 1.0 - k, gamma + 1.5, g2 / (g2 - 4.0), pol);
    const Complex v = std::pow(4.0, k) * cpow(g, lambda) / ipow(4.0 - g2, k) * f;
    ensure_finite(v, "gst_symmetric_beta_wigner_form");
    return {v, 0.0, GstMethod::closed_form};
}

GstResult gst_nonsymmetric_beta_wigner_form(double lambda, int k, bool swapped, Complex z,
                                            const SeriesPolicy& pol) {
    check_lambda(lambda, "gst_nonsymmetric_beta_wigner_form");
    if (k < 1) throw ParameterError("gst_nonsymmetric_beta_wigner_form: k must be positive");
    if (!(lambda > k - 0.5))
        throw ParameterError("gst_nonsymmetric_beta_wigner_form: requires lambda > k - 1/2");
    if (is_nonpos_int(Complex(2.0 * lambda - k + 1.0)))
        throw ParameterError("gst_nonsymmetric_beta_wigner_form: 2*lambda - k + 1 is a nonpositive integer");
    check_off_cut(z, "gst_nonsymmetric_beta_wigner_form");
    const Complex g = stieltjes_wigner(z);
    const Complex arg = swapped ? g / (g - 2.0) : g / (g + 2.0);
    const Complex f = gauss_2f1(1.0 - k, static_cast<double>(k), 2.0 * lambda - k + 1.0, arg, pol);
    const Complex denom = swapped ? cpow(z - 1.0, 0.5 * k) : cpow(z + 1.0, 0.5 * k);
    const Complex v = cpow(g, lambda - 0.5 * k) / denom * f;
    ensure_finite(v, "gst_nonsymmetric_beta_wigner_form");
    return {v, 0.0, GstMethod::closed_form};
}

double bernoulli_power_residual(double lambda, Complex z, const QuadraturePolicy& pol) {
    const MeasureSpec m = bernoulli_power_measure(lambda);
    const Complex lhs = gst_quadrature(lambda, m, z, pol).value;
    const Complex rhs = cpow_lower(stieltjes_bernoulli(z), lambda);
    return std::abs(lhs - rhs);
}

double shrinkage_residual(double lambda, double p, Complex z, const QuadraturePolicy& pol) {
    check_lambda(lambda, "shrinkage_residual");
    if (!(p > 0.0) || !(p < 1.0)) throw ParameterError("shrinkage_residual: p must lie in (0, 1)");
    check_off_cut(z, "shrinkage_residual");
    const MeasureSpec m = beta_measure({p * lambda - 1.0, (1.0 - p) * lambda - 1.0});
    const Complex lhs = gst_quadrature(lambda, m, z, pol).value;
    const Complex rhs =
        std::exp(lambda * (-(1.0 - p) * std::log(z - 1.0) - p * std::log(z + 1.0)));
    return std::abs(lhs - rhs);
}

double kappa_reduction_residual(double lambda, const MeasureSpec& m, Complex z,
                                const QuadraturePolicy& outer, const QuadraturePolicy& inner) {
    check_lambda(lambda, "kappa_reduction_residual");
    if (m.lo() < -1.0 - 1e-12 || m.hi() > 1.0 + 1e-12)
        throw ParameterError("kappa_reduction_residual: measure must be supported in [-1, 1]");
    const ProductMeasureFunctional conv = mult_convolve(kappa(lambda), m);
    const Complex lhs =
        conv.integrate([&](double x) { return cpow(z - x, -lambda); }, outer, inner).value;
    const Complex rhs = cpow(z, -0.5 * lambda) * gst_quadrature(0.5 * lambda, m, z).value;
    return std::abs(lhs - rhs);
}

FreePoissonResiduals free_poisson_residuals(double lambda, Complex z,
                                            const QuadraturePolicy& pol) {
    check_lambda(lambda, "free_poisson_residuals");
    const Complex rhs = std::exp(lambda * (std::numbers::ln2 - std::log(z + sqrt_zzm1(z))));
    const ProductMeasureFunctional conv = mult_convolve(kappa(lambda), kappa(lambda + 1.0));
    const Complex via_double =
        conv.integrate([&](double x) { return cpow(z - x, -lambda); }).value;
    const Complex via_density =
        gst_quadrature(lambda, kappa_convolution_density(lambda), z, pol).value;
    return {std::abs(via_double - rhs), std::abs(via_density - rhs)};
}

VerificationSummary power_relation_check(double lambda, const MeasureSpec& mu,
                                         const MeasureSpec& nu, const EvalGrid& grid,
                                         const QuadraturePolicy& pol) {
    check_lambda(lambda, "power_relation_check");
    VerificationSummary s;
    double sum = 0.0;
    for (Complex z : grid.points) {
        const Complex lhs = gst_quadrature(lambda, mu, z, pol).value;
        const Complex rhs = cpow_lower(gst_quadrature(1.0, nu, z, pol).value, lambda);
        const double r = std::abs(lhs - rhs);
        s.max_residual = std::max(s.max_residual, r);
        sum += r;
        ++s.count;
    }
    s.mean_residual = s.count ? sum / static_cast<double>(s.count) : 0.0;
    return s;
}

} // namespace gstlab
