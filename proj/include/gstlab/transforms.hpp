#pragma once

#include <vector>

#include "gstlab/measures.hpp"

namespace gstlab {

enum class GstMethod { closed_form, quadrature };

struct GstResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;
    GstMethod method = GstMethod::quadrature;
};

// Evaluation points kept clear of a cut or support interval.
struct EvalGrid {
    std::vector<Complex> points;

    // Re in [-3, 3] step 1/4, Im in {1/2, 1, 2}.
    static EvalGrid standard();
    static EvalGrid rectangle(double re_min, double re_max, double re_step,
                              const std::vector<double>& im_values);
    // Drops points within margin of the real interval [lo, hi].
    EvalGrid& exclude_near(double lo, double hi, double margin = 1e-6);
    // Drops points within margin of the ray (-inf, hi_end].
    EvalGrid& exclude_real_ray(double hi_end, double margin = 1e-6);
};

// Reference evaluator: integral of (z-x)^(-lambda) against the measure.
GstResult gst_quadrature(double lambda, const MeasureSpec& m, Complex z,
                         const QuadraturePolicy& pol = {});

// Closed form for beta measures, hypergeometric in 2/(1-z).
GstResult gst_beta_closed(double lambda, const BetaParams& p, Complex z,
                          const SeriesPolicy& pol = {});
// The companion form in 2/(1+z); agrees with gst_beta_closed off the cut.
GstResult gst_beta_closed_alt(double lambda, const BetaParams& p, Complex z,
                              const SeriesPolicy& pol = {});

// Ordinary (lambda = 1) transforms of the named measures.
Complex stieltjes_wigner(Complex z);
Complex stieltjes_arcsine(Complex z);
Complex stieltjes_bernoulli(Complex z);
Complex stieltjes_free_poisson(Complex z);

// Symmetric beta measure with gamma = beta = lambda - 1/2 - k: the transform
// written as powers and fractions of the Wigner transform.
GstResult gst_symmetric_beta_wigner_form(double lambda, int k, Complex z,
                                         const SeriesPolicy& pol = {});
// Nonsymmetric case gamma = lambda - 1/2, beta = gamma - k (or the two
// parameters interchanged when swapped is set).
GstResult gst_nonsymmetric_beta_wigner_form(double lambda, int k, bool swapped, Complex z,
                                            const SeriesPolicy& pol = {});

// |G_{lambda,mu_lambda}(z) - [z/(z^2-1)]^lambda| for the Bernoulli power family.
double bernoulli_power_residual(double lambda, Complex z, const QuadraturePolicy& pol = {});

// |G_{lambda,beta(p*l-1,(1-p)*l-1)}(z) - [(z-1)^(p-1)(z+1)^(-p)]^lambda|.
double shrinkage_residual(double lambda, double p, Complex z, const QuadraturePolicy& pol = {});

// Residual of the reduction of the transform of kappa(lambda) * mu (the
// multiplicative convolution) to a half-order transform of mu.
double kappa_reduction_residual(double lambda, const MeasureSpec& m, Complex z,
                                const QuadraturePolicy& outer = QuadraturePolicy{400, 10, 1e-8},
                                const QuadraturePolicy& inner = QuadraturePolicy{400, 10, 1e-9});

struct FreePoissonResiduals {
    double double_quadrature;
    double closed_density;
};
// Transform of kappa(lambda) * kappa(lambda+1) against the free Poisson power,
// via the double integral and via the closed convolution density.
FreePoissonResiduals free_poisson_residuals(double lambda, Complex z,
                                            const QuadraturePolicy& pol = {});

struct VerificationSummary {
    double max_residual = 0.0;
    double mean_residual = 0.0;
    std::size_t count = 0;
};

// max over the grid of |G_{lambda,mu}(z) - [G_nu(z)]^lambda|, both sides by
// quadrature.
VerificationSummary power_relation_check(double lambda, const MeasureSpec& mu,
                                         const MeasureSpec& nu, const EvalGrid& grid,
                                         const QuadraturePolicy& pol = {});

} // namespace gstlab
