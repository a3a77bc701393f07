#pragma once

#include <vector>

#include "gstlab/special_functions.hpp"

namespace gstlab {

struct HumbertParams {
    double alpha;
    int d;
};

struct TrinomialRoot {
    Complex y;
    Complex z;
    double residual; // |z^(d+1) - (d+1) y z + 1|
};

// Taylor coefficients H_0..H_n_max of (1 - (d+1) x z + z^(d+1))^(-alpha) in z.
std::vector<double> humbert_coeffs(const HumbertParams& p, double x, int n_max);

// f(z) = (1 + z^(d+1)) / ((d+1) z).
Complex f_map(int d, Complex z);

// Smallest |y| modulus at which root selection is considered safe.
double trinomial_branch_margin(int d);

// The root of z^(d+1) - (d+1) y z + 1 = 0 that vanishes as y -> infinity,
// found from companion-matrix eigenvalues plus a Newton polish.
TrinomialRoot root_select(int d, Complex y);

// Hypergeometric series for the same root, argument sign/(d^d y^(d+1)).
// alternating_sign selects ((-1)^d) in place of +1; the two agree for even d
// and are compared against root_select by the tests for odd d.
Complex trinomial_root_series(int d, Complex y, bool alternating_sign = false,
                              const SeriesPolicy& pol = {});

// Root via 2F1 at d = 2, cross-validated against root_select.
Complex root_via_2f1_d2(Complex y, const SeriesPolicy& pol = {});

// d = 2: discrepancy between the alpha-power of the Euler-type [0,1] integral
// and [3 z(y)]^alpha, the two evaluations of the transform of the Humbert
// moment functional.
double humbert_moment_functional_residual_d2(double alpha, Complex y,
                                             const QuadraturePolicy& pol = {});

// d = 2 normalization chain at y = f(z): |[3z]^alpha * RHS^(-alpha) - 1|.
double humbert_normalization_residual(const HumbertParams& p, Complex z,
                                      const QuadraturePolicy& pol = {});

} // namespace gstlab
