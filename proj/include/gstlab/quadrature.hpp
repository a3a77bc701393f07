#pragma once

#include <cstddef>
#include <functional>

#include "gstlab/complex_utils.hpp"

namespace gstlab {

struct QuadraturePolicy {
    int abscissae_budget = 2000;
    int levels = 12;
    double rel_tol = 1e-11;
};

struct IntegralResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    std::size_t evals = 0;
};

// Integrand receives (x, x - lo, hi - x). The endpoint distances stay accurate
// even where x itself rounds to an endpoint, so integrable singularities like
// (hi - x)^g with g in (-1, 0) can be evaluated without cancellation.
using Integrand = std::function<Complex(double x, double dlo, double dhi)>;

// Double-exponential (tanh-sinh) quadrature over a finite interval.
IntegralResult tanh_sinh(const Integrand& f, double lo, double hi,
                         const QuadraturePolicy& pol = {});

} // namespace gstlab
