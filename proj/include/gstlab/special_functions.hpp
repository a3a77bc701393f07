#pragma once

#include <vector>

#include "gstlab/complex_utils.hpp"
#include "gstlab/quadrature.hpp"

namespace gstlab {

// Termination and budget control for hypergeometric series.
struct SeriesPolicy {
    double rel_tol = 1e-14;
    double abs_tol = 1e-300;
    int max_terms = 10000;
};

// Complex log-gamma (Lanczos approximation, reflection for Re z < 1/2).
// exp(ln_gamma(z)) == Gamma(z); real for real z > 0.
Complex ln_gamma(Complex z);
Complex gamma_fn(Complex z);
// 1/Gamma(z); returns exactly 0 at the poles of Gamma.
Complex reciprocal_gamma(Complex z);
Complex digamma(Complex z);

Complex pochhammer(Complex z, int k);
double pochhammer(double z, int k);

// Gauss 2F1 on C \ [1, inf). Direct series inside |z| <= 0.8, otherwise the
// argument transformation with the smallest mapped modulus; integer-parameter
// degeneracies take the logarithmic near-unit series or the Euler integral.
Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z, const SeriesPolicy& pol = {});

// Same evaluation given both the argument and its complement 1 - z, each
// computed accurately by the caller. Needed when z is pinned near 0 or 1.
Complex gauss_2f1_split(Complex a, Complex b, Complex c, Complex z, Complex one_minus_z,
                        const SeriesPolicy& pol = {});

// Generalized hypergeometric series pFq, p <= q+1 (unit disc when p == q+1).
Complex hyper_pfq(const std::vector<Complex>& upper, const std::vector<Complex>& lower,
                  Complex z, const SeriesPolicy& pol = {});

// Closed forms 2F1(a-1/2, a, 2a; u) and 2F1(a, a+1/2, 2a; u).
Complex closed_id1(Complex a, Complex u);
Complex closed_id2(Complex a, Complex u);

// Residuals of the linear and quadratic argument transformations; these
// double as self-tests of the 2F1 engine.
double transform_linear(Complex a, Complex d, Complex c, Complex u, const SeriesPolicy& pol = {});
double transform_quadratic_0(Complex a, Complex b, Complex u, const SeriesPolicy& pol = {});
double transform_quadratic_1(Complex a, Complex b, Complex u, const SeriesPolicy& pol = {});

// Independent 2F1 oracle: tanh-sinh integration of the Euler representation.
// Requires Re(c) > Re(b) > 0.
Complex euler_2f1_oracle(Complex a, Complex b, Complex c, Complex z,
                         const QuadraturePolicy& pol = {});

} // namespace gstlab
