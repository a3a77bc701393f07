#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gstlab/quadrature.hpp"
#include "gstlab/special_functions.hpp"

namespace gstlab {

// Beta measure parameters: density ~ (1-x)^gamma (1+x)^beta on [-1,1].
struct BetaParams {
    double gamma;
    double beta;
};

struct Atom {
    double location;
    double weight;
};

// One piece of a continuous density; pdf is evaluated as pdf(x, x-lo, hi-x)
// so declared endpoint singularities keep full accuracy under quadrature.
struct DensitySegment {
    double lo, hi;
    double exp_lo, exp_hi; // leading endpoint exponents, each > -1
    std::function<double(double, double, double)> pdf;
};

class MeasureSpec {
public:
    MeasureSpec(std::string name, std::vector<Atom> atoms, std::vector<DensitySegment> segments);

    const std::string& name() const { return name_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensitySegment>& segments() const { return segments_; }
    bool has_density() const { return !segments_.empty(); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double exp_lo() const;
    double exp_hi() const;
    double atom_mass() const;

private:
    std::string name_;
    std::vector<Atom> atoms_;
    std::vector<DensitySegment> segments_;
    double lo_ = 0.0, hi_ = 0.0;
};

MeasureSpec beta_measure(BetaParams p);
MeasureSpec wigner();
MeasureSpec arcsine();
MeasureSpec bernoulli_sym();
// Beta density ~ [x(1-x)]^(lambda/2 - 1) on [0,1].
MeasureSpec kappa(double lambda);
// Free Poisson law with density (2/pi) sqrt((1-x)/x) on [0,1].
MeasureSpec free_poisson_quarter();
// Symmetric measure whose generalized transform of order lambda is the
// lambda-th power of the symmetric Bernoulli transform; defined for lambda >= 1.
MeasureSpec bernoulli_power_measure(double lambda);
// Closed-form density of the multiplicative convolution of kappa(lambda)
// and kappa(lambda+1) on [0,1].
MeasureSpec kappa_convolution_density(double lambda);

IntegralResult integrate(const MeasureSpec& m, const std::function<Complex(double)>& f,
                         const QuadraturePolicy& pol = {});
double moment(const MeasureSpec& m, int k, const QuadraturePolicy& pol = {});

// Multiplicative convolution as an integration functional: no closed density
// in general, only expectations of f(uv) under the product law.
class ProductMeasureFunctional {
public:
    ProductMeasureFunctional(MeasureSpec a, MeasureSpec b);

    IntegralResult integrate(const std::function<Complex(double)>& f,
                             const QuadraturePolicy& outer = QuadraturePolicy{400, 10, 1e-8},
                             const QuadraturePolicy& inner = QuadraturePolicy{400, 10, 1e-9}) const;

    const MeasureSpec& left() const { return a_; }
    const MeasureSpec& right() const { return b_; }

private:
    MeasureSpec a_, b_;
};

ProductMeasureFunctional mult_convolve(MeasureSpec a, MeasureSpec b);

} // namespace gstlab
