#pragma once

#include "gstlab/measures.hpp"

namespace gstlab {

struct JacobiParams {
    double gamma;
    double beta;
    int n;
};

struct ExpansionTruncation {
    int n_max = 40;
};

// Jacobi polynomial P_n^(gamma,beta)(x) by its terminating hypergeometric sum.
double jacobi_poly(const JacobiParams& p, double x);

// Ultraspherical polynomial C_n^(alpha), alpha > -1/2, alpha != 0.
double ultraspherical_poly(double alpha, int n, double x);

// n-th coefficient of the expansion of (z-x)^(-lambda) in Jacobi polynomials
// orthogonal for the beta measure with parameters p.
Complex kernel_expansion_coeff(double lambda, const BetaParams& p, int n, Complex z,
                               const SeriesPolicy& pol = {});

// Truncated reconstruction of (z-x)^(-lambda) from the expansion.
Complex kernel_reconstruct(double lambda, const BetaParams& p, Complex z, double x,
                           const ExpansionTruncation& t = {}, const SeriesPolicy& pol = {});

} // namespace gstlab
