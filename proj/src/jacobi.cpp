#include "gstlab/jacobi.hpp"

#include <cmath>

namespace gstlab {

namespace {

void check_jacobi_params(double gamma, double beta, int n) {
    if (!(gamma > -1.0) || !(beta > -1.0))
        throw ParameterError("jacobi_poly: gamma and beta must exceed -1");
    if (n < 0) throw ParameterError("jacobi_poly: degree must be nonnegative");
}

// Terminating 2F1 sum. The reflection in jacobi_poly keeps (1-x)/2 <= 1/2,
// but the alternating terms still reach ~1e9 at n = 20 while the value is
// O(1e-1), so the sum runs in quad precision to absorb the cancellation.
double jacobi_sum(double gamma, double beta, int n, double x) {
    using Quad = __float128;
    const Quad one = 1;
    const Quad w = Quad(0.5) * (one - Quad(x));
    Quad lead = 1;
    for (int i = 0; i < n; ++i) lead *= (Quad(gamma) + 1 + i) / (i + one);
    Quad term = 1, sum = 1;
    for (int k = 0; k < n; ++k) {
        term *= (Quad(-n + k) * (Quad(n) + gamma + beta + 1 + k)) /
                ((Quad(gamma) + 1 + k) * (k + one)) * w;
        sum += term;
    }
    return static_cast<double>(lead * sum);
}

} // namespace

double jacobi_poly(const JacobiParams& p, double x) {
    check_jacobi_params(p.gamma, p.beta, p.n);
    if (x < 0.0) {
        const double v = jacobi_sum(p.beta, p.gamma, p.n, -x);
        return (p.n % 2 == 0) ? v : -v;
    }
    return jacobi_sum(p.gamma, p.beta, p.n, x);
}

double ultraspherical_poly(double alpha, int n, double x) {
    if (!(alpha > -0.5) || alpha == 0.0)
        throw ParameterError("ultraspherical_poly: requires alpha > -1/2, alpha != 0");
    if (n < 0) throw ParameterError("ultraspherical_poly: degree must be nonnegative");
    const double scale = pochhammer(2.0 * alpha, n) / pochhammer(alpha + 0.5, n);
    return scale * jacobi_poly({alpha - 0.5, alpha - 0.5, n}, x);
}

Complex kernel_expansion_coeff(double lambda, const BetaParams& p, int n, Complex z,
                               const SeriesPolicy& pol) {
    if (!(lambda > 0.0)) throw ParameterError("kernel_expansion_coeff: lambda must be positive");
    if (!(p.gamma > -1.0) || !(p.beta > -1.0))
        throw ParameterError("kernel_expansion_coeff: gamma and beta must exceed -1");
    if (n < 0) throw ParameterError("kernel_expansion_coeff: index must be nonnegative");
    if (z.imag() == 0.0 && z.real() <= 1.0)
        throw CutError("kernel_expansion_coeff: point on the cut (-inf, 1]");

    const double s = p.gamma + p.beta;
    // lgamma-difference form keeps the ratio finite for n around 30 and
    // equals 1 at n = 0 even when s + 1 <= 0.
    const double lg_ratio =
        (n == 0) ? 0.0 : std::lgamma(s + n + 1.0) - std::lgamma(2.0 * n + s + 1.0);
    const Complex w = 2.0 / (1.0 - z);
    const Complex cm = (1.0 + z) / (z - 1.0);
    const Complex f = gauss_2f1_split(n + lambda, n + p.gamma + 1.0, 2.0 * n + 2.0 + s, w, cm, pol);
    const Complex v = std::exp(lg_ratio) * pochhammer(lambda, n) * std::pow(2.0, n) *
                      cpow(z - 1.0, -(n + lambda)) * f;
    ensure_finite(v, "kernel_expansion_coeff");
    return v;
}

Complex kernel_reconstruct(double lambda, const BetaParams& p, Complex z, double x,
                           const ExpansionTruncation& t, const SeriesPolicy& pol) {
    if (t.n_max < 0) throw ParameterError("kernel_reconstruct: n_max must be nonnegative");
    if (!(x >= -1.0 && x <= 1.0))
        throw ParameterError("kernel_reconstruct: x must lie in [-1, 1]");
    Complex sum = 0.0;
    for (int n = 0; n <= t.n_max; ++n)
        sum += kernel_expansion_coeff(lambda, p, n, z, pol) * jacobi_poly({p.gamma, p.beta, n}, x);
    ensure_finite(sum, "kernel_reconstruct");
    return sum;
}

} // namespace gstlab
