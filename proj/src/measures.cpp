#include "gstlab/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace gstlab {

namespace {

double check_exponent(double e, const char* what) {
    if (!(e > -1.0)) throw ParameterError(std::string(what) + ": endpoint exponent must exceed -1");
    return e;
}

std::string fmt_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

MeasureSpec::MeasureSpec(std::string name, std::vector<Atom> atoms,
                         std::vector<DensitySegment> segments)
    : name_(std::move(name)), atoms_(std::move(atoms)), segments_(std::move(segments)) {
    if (name_.empty()) throw ParameterError("MeasureSpec: empty name");
    if (atoms_.empty() && segments_.empty())
        throw ParameterError("MeasureSpec: measure has no atoms and no density");
    lo_ = std::numeric_limits<double>::infinity();
    hi_ = -std::numeric_limits<double>::infinity();
    for (const Atom& a : atoms_) {
        if (!(a.weight > 0.0) || a.weight > 1.0 + 1e-12)
            throw ParameterError("MeasureSpec: atom weight must lie in (0, 1]");
        lo_ = std::min(lo_, a.location);
        hi_ = std::max(hi_, a.location);
    }
    double prev_hi = -std::numeric_limits<double>::infinity();
    for (const DensitySegment& s : segments_) {
        if (!(s.hi > s.lo)) throw ParameterError("MeasureSpec: empty density segment");
        if (s.lo < prev_hi) throw ParameterError("MeasureSpec: overlapping density segments");
        prev_hi = s.hi;
        check_exponent(s.exp_lo, "MeasureSpec");
        check_exponent(s.exp_hi, "MeasureSpec");
        lo_ = std::min(lo_, s.lo);
        hi_ = std::max(hi_, s.hi);
    }
}

double MeasureSpec::exp_lo() const {
    return segments_.empty() ? 0.0 : segments_.front().exp_lo;
}

double MeasureSpec::exp_hi() const {
    return segments_.empty() ? 0.0 : segments_.back().exp_hi;
}

double MeasureSpec::atom_mass() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.weight;
    return s;
}

MeasureSpec beta_measure(BetaParams p) {
    if (!(p.gamma > -1.0) || !(p.beta > -1.0))
        throw ParameterError("beta_measure: gamma and beta must exceed -1");
    const double g = p.gamma, b = p.beta;
    const double norm = std::exp(std::lgamma(g + b + 2.0) - (g + b + 1.0) * std::numbers::ln2 -
                                 std::lgamma(g + 1.0) - std::lgamma(b + 1.0));
    DensitySegment seg{
        -1.0, 1.0, b, g,
        [norm, g, b](double, double dlo, double dhi) {
            return norm * std::pow(dhi, g) * std::pow(dlo, b);
        }};
    return MeasureSpec("beta:gamma=" + fmt_param(g) + ",beta=" + fmt_param(b), {}, {seg});
}

MeasureSpec wigner() {
    MeasureSpec m = beta_measure({0.5, 0.5});
    return MeasureSpec("wigner", {}, m.segments());
}

MeasureSpec arcsine() {
    MeasureSpec m = beta_measure({-0.5, -0.5});
    return MeasureSpec("arcsine", {}, m.segments());
}

MeasureSpec bernoulli_sym() {
    return MeasureSpec("bernoulli", {{-1.0, 0.5}, {1.0, 0.5}}, {});
}

MeasureSpec kappa(double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("kappa: lambda must be positive");
    const double e = 0.5 * lambda - 1.0;
    const double norm = std::exp(std::lgamma(lambda) - 2.0 * std::lgamma(0.5 * lambda));
    DensitySegment seg{
        0.0, 1.0, e, e,
        [norm, e](double, double dlo, double dhi) {
            return norm * std::pow(dlo, e) * std::pow(dhi, e);
        }};
    return MeasureSpec("kappa:lambda=" + fmt_param(lambda), {}, {seg});
}

MeasureSpec free_poisson_quarter() {
    const double c = 2.0 / std::numbers::pi;
    DensitySegment seg{
        0.0, 1.0, -0.5, 0.5,
        [c](double, double dlo, double dhi) { return c * std::sqrt(dhi / dlo); }};
    return MeasureSpec("free-poisson", {}, {seg});
}

MeasureSpec bernoulli_power_measure(double lambda) {
    if (!(lambda >= 1.0)) throw ParameterError("bernoulli_power_measure: requires lambda >= 1");
    const double w = std::pow(2.0, -lambda);
    std::vector<Atom> atoms{{-1.0, w}, {1.0, w}};
    if (lambda == 1.0) return MeasureSpec("bernoulli-power:lambda=1", atoms, {});

    // Continuous part: |x| * q(x^2) where q is the continuous part of the
    // image of the measure under x -> x^2 (a G-distribution on (0,1)).
    const double K = std::pow(2.0, 1.0 - lambda) * lambda * (lambda - 1.0) / 4.0;
    const double a = 0.5 * lambda + 1.0, b = 0.5 * (lambda + 1.0);
    const double e0 = std::min(2.0 * lambda - 3.0, 0.0);

    auto hyp = [a, b](double arg, double carg) {
        return gauss_2f1_split(a, b, 2.0, Complex(arg), Complex(carg)).real();
    };
    // The hypergeometric factor grows like |x|^(1-2 lambda) towards 0; below
    // this floor it would overflow while the region contributes nothing at
    // quadrature accuracy, so the evaluation point is clamped.
    const double floor_ax = std::exp(-600.0 / (2.0 * lambda - 1.0));
    auto value_at = [K, lambda, hyp, floor_ax](double ax, double arg, double carg) {
        if (ax < floor_ax) {
            ax = floor_ax;
            carg = ax * ax;
            arg = (1.0 - ax) * (1.0 + ax);
        }
        return K * std::pow(ax, 2.0 * lambda - 1.0) * hyp(arg, carg);
    };
    DensitySegment neg{
        -1.0, 0.0, 0.0, e0,
        [value_at](double x, double dlo, double dhi) {
            return value_at(dhi, dlo * (1.0 - x), dhi * dhi); // |x| = dhi
        }};
    DensitySegment pos{
        0.0, 1.0, e0, 0.0,
        [value_at](double x, double dlo, double dhi) {
            return value_at(dlo, dhi * (1.0 + x), dlo * dlo);
        }};
    return MeasureSpec("bernoulli-power:lambda=" + fmt_param(lambda), atoms, {neg, pos});
}

MeasureSpec kappa_convolution_density(double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("kappa_convolution_density: lambda must be positive");
    const double norm = std::exp(std::lgamma(lambda) + std::lgamma(lambda + 1.0) -
                                 std::lgamma(0.5 * lambda) - std::lgamma(0.5 * (lambda + 1.0)) -
                                 std::lgamma(lambda + 0.5));
    const double elo = 0.5 * lambda - 1.0, ehi = lambda - 0.5;
    const double a = 0.5 * (lambda - 1.0), b = 0.5 * (lambda + 1.0), c = lambda + 0.5;
    DensitySegment seg{
        0.0, 1.0, elo, ehi,
        [norm, elo, ehi, a, b, c](double, double dlo, double dhi) {
            const double f = gauss_2f1_split(a, b, c, Complex(dhi), Complex(dlo)).real();
            return norm * std::pow(dlo, elo) * std::pow(dhi, ehi) * f;
        }};
    return MeasureSpec("kappa-conv:lambda=" + fmt_param(lambda), {}, {seg});
}

IntegralResult integrate(const MeasureSpec& m, const std::function<Complex(double)>& f,
                         const QuadraturePolicy& pol) {
    IntegralResult total;
    for (const Atom& a : m.atoms()) {
        total.value += a.weight * f(a.location);
        ++total.evals;
    }
    for (const DensitySegment& s : m.segments()) {
        const IntegralResult r = tanh_sinh(
            [&](double x, double dlo, double dhi) { return f(x) * s.pdf(x, dlo, dhi); },
            s.lo, s.hi, pol);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    ensure_finite(total.value, "integrate");
    return total;
}

double moment(const MeasureSpec& m, int k, const QuadraturePolicy& pol) {
    if (k < 0) throw ParameterError("moment: order must be nonnegative");
    return integrate(m, [k](double x) { return Complex(std::pow(x, k)); }, pol).value.real();
}

ProductMeasureFunctional::ProductMeasureFunctional(MeasureSpec a, MeasureSpec b)
    : a_(std::move(a)), b_(std::move(b)) {}

IntegralResult ProductMeasureFunctional::integrate(const std::function<Complex(double)>& f,
                                                   const QuadraturePolicy& outer,
                                                   const QuadraturePolicy& inner) const {
    IntegralResult total;
    auto expect_b = [&](double u) -> Complex {
        const IntegralResult r = gstlab::integrate(b_, [&](double v) { return f(u * v); }, inner);
        total.err += r.err; // coarse: inner error accumulates per outer node
        return r.value;
    };
    for (const Atom& a : a_.atoms()) total.value += a.weight * expect_b(a.location);
    for (const DensitySegment& s : a_.segments()) {
        const IntegralResult r = tanh_sinh(
            [&](double x, double dlo, double dhi) { return expect_b(x) * s.pdf(x, dlo, dhi); },
            s.lo, s.hi, outer);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    ensure_finite(total.value, "mult_convolve integrate");
    return total;
}

ProductMeasureFunctional mult_convolve(MeasureSpec a, MeasureSpec b) {
    return ProductMeasureFunctional(std::move(a), std::move(b));
}

} // namespace gstlab
