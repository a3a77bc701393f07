#include "gstlab/humbert.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace gstlab {

namespace {

void check_humbert_params(const HumbertParams& p) {
    if (!(p.alpha > -0.5) || p.alpha == 0.0)
        throw ParameterError("humbert: requires alpha > -1/2, alpha != 0");
    if (p.d < 1) throw ParameterError("humbert: d must be a positive integer");
}

Complex trinomial(int d, Complex y, Complex z) {
    return ipow(z, d + 1) - (d + 1.0) * y * z + 1.0;
}

Complex trinomial_deriv(int d, Complex y, Complex z) {
    return (d + 1.0) * (ipow(z, d) - y);
}

// Euler-integral value of 3 z(y) for d = 2: the hypergeometric factor of the
// selected root written as a [0,1] integral against x^(-1/3) (1-x)^(-1/6).
// The prefactor keeps (4 y^3)^(1/3) intact; it collapses to 4^(1/3) y only in
// the sector |arg y| < pi/3.
Complex euler_root_integral_d2(Complex y, const QuadraturePolicy& pol) {
    const Complex y3x4 = 4.0 * ipow(y, 3);
    if (dist_to_interval(y3x4, 0.0, 1.0) < 0.05)
        throw SectorError("euler_root_integral_d2: 4 y^3 too close to [0, 1]");
    const double cnorm =
        std::exp(std::lgamma(1.5) - std::lgamma(2.0 / 3.0) - std::lgamma(5.0 / 6.0));
    const IntegralResult integral = tanh_sinh(
        [&](double, double dlo, double dhi) {
            return cpow(y3x4 - dlo, -1.0 / 3.0) * std::pow(dlo, -1.0 / 3.0) *
                   std::pow(dhi, -1.0 / 6.0);
        },
        0.0, 1.0, pol);
    return cnorm * cpow(y3x4, 1.0 / 3.0) / y * integral.value;
}

} // namespace

std::vector<double> humbert_coeffs(const HumbertParams& p, double x, int n_max) {
    check_humbert_params(p);
    if (n_max < 0) throw ParameterError("humbert_coeffs: n_max must be nonnegative");
    // Power-series exponentiation of the trinomial base B = 1 + b1 z + z^(d+1):
    // n f_n = sum_k ((s+1)k - n) b_k f_{n-k}, s = -alpha.
    const double s = -p.alpha;
    const double b1 = -(p.d + 1.0) * x;
    const int dp1 = p.d + 1;
    std::vector<double> h(static_cast<std::size_t>(n_max) + 1, 0.0);
    h[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        double acc = ((s + 1.0) * 1.0 - n) * b1 * h[n - 1];
        if (n >= dp1) acc += ((s + 1.0) * dp1 - n) * h[n - dp1];
        h[n] = acc / n;
    }
    return h;
}

Complex f_map(int d, Complex z) {
    if (d < 1) throw ParameterError("f_map: d must be a positive integer");
    if (z == 0.0) throw ZeroError("f_map: z = 0");
    return (1.0 + ipow(z, d + 1)) / ((d + 1.0) * z);
}

double trinomial_branch_margin(int d) {
    // Branch points of the selected root sit at |y| = d^(-d/(d+1)); the margin
    // keeps roughly a factor two clear of them.
    return (d + 1.0) / d * std::pow(static_cast<double>(d), -1.0 / (d + 1.0));
}

TrinomialRoot root_select(int d, Complex y) {
    if (d < 1) throw ParameterError("root_select: d must be a positive integer");
    if (std::abs(y) < trinomial_branch_margin(d))
        throw BranchError("root_select: |y| too close to the branch points of the root");

    const int n = d + 1;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    // p(z) = z^n + a_1 z + a_0 with a_1 = -(d+1) y, a_0 = 1.
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    companion(0, n - 1) = -1.0;
    companion(1, n - 1) = (d + 1.0) * y;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("root_select: eigenvalue iteration failed");

    const Complex seed = 1.0 / ((d + 1.0) * y);
    Complex best = seed;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        Complex r = solver.eigenvalues()(i);
        for (int step = 0; step < 2; ++step) {
            const Complex dp = trinomial_deriv(d, y, r);
            if (dp == 0.0) break;
            r -= trinomial(d, y, r) / dp;
        }
        const double dist = std::abs(r - seed);
        if (dist < best_dist) {
            best_dist = dist;
            best = r;
        }
    }
    const double residual = std::abs(trinomial(d, y, best));
    if (residual > 1e-8)
        throw ConvergenceError("root_select: polished root residual too large");
    return {y, best, residual};
}

Complex trinomial_root_series(int d, Complex y, bool alternating_sign, const SeriesPolicy& pol) {
    if (d < 1) throw ParameterError("trinomial_root_series: d must be a positive integer");
    if (y == 0.0) throw ZeroError("trinomial_root_series: y = 0");
    const double sign = alternating_sign && (d % 2 == 1) ? -1.0 : 1.0;
    const Complex arg = sign / (std::pow(static_cast<double>(d), d) * ipow(y, d + 1));

    std::vector<Complex> upper, lower;
    if (d == 1) {
        upper = {Complex(0.5), Complex(1.0)};
        lower = {Complex(2.0)};
    } else {
        for (int i = 1; i <= d; ++i) upper.emplace_back(static_cast<double>(i) / (d + 1.0));
        for (int i = 1; i <= d; ++i)
            if (i != d - 1) lower.emplace_back((i + 1.0) / d);
    }
    return hyper_pfq(upper, lower, arg, pol) / ((d + 1.0) * y);
}

Complex root_via_2f1_d2(Complex y, const SeriesPolicy& pol) {
    const Complex w = 0.25 / ipow(y, 3);
    if (std::abs(w) >= 1.0)
        throw SectorError("root_via_2f1_d2: |1/(4 y^3)| must be below 1");
    const Complex r = gauss_2f1(1.0 / 3.0, 2.0 / 3.0, 1.5, w, pol) / (3.0 * y);
    const TrinomialRoot oracle = root_select(2, y);
    if (std::abs(r - oracle.z) > 1e-8)
        throw SectorError("root_via_2f1_d2: formula disagrees with the selected root here");
    return r;
}

double humbert_moment_functional_residual_d2(double alpha, Complex y,
                                             const QuadraturePolicy& pol) {
    if (alpha == 0.0) throw ParameterError("humbert_moment_functional_residual_d2: alpha = 0");
    if (!(y.imag() > 0.0))
        throw ParameterError("humbert_moment_functional_residual_d2: requires Im(y) > 0");
    if (std::abs(4.0 * ipow(y, 3)) <= 1.0)
        throw SectorError("humbert_moment_functional_residual_d2: requires |4 y^3| > 1");

    const Complex root = root_select(2, y).z;
    const Complex lhs = cpow(3.0 * root, alpha);
    const Complex rhs = cpow(euler_root_integral_d2(y, pol), alpha);
    return std::abs(lhs - rhs);
}

double humbert_normalization_residual(const HumbertParams& p, Complex z,
                                      const QuadraturePolicy& pol) {
    check_humbert_params(p);
    if (p.d != 2)
        throw ParameterError("humbert_normalization_residual: realized through the d = 2 chain only");
    if (!(std::abs(z) <= 0.25) || z == 0.0)
        throw ParameterError("humbert_normalization_residual: requires 0 < |z| <= 1/4");
    const Complex y = f_map(2, z);
    const Complex ratio = cpow(3.0 * z, p.alpha) * cpow(euler_root_integral_d2(y, pol), -p.alpha);
    return std::abs(ratio - 1.0);
}

} // namespace gstlab
