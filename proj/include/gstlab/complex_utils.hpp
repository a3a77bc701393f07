#pragma once

#include <cmath>
#include <complex>

#include "gstlab/errors.hpp"

namespace gstlab {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void ensure_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw Error(std::string(what) + ": non-finite result");
}

// Principal-branch power w^p, arg(w) in (-pi, pi].
inline Complex cpow(Complex w, Complex p) {
    if (w == 0.0) {
        if (p == 0.0) return 1.0;
        if (p.real() > 0.0) return 0.0;
        throw ZeroError("cpow: zero base with nonpositive exponent");
    }
    return std::exp(p * std::log(w));
}

inline Complex cpow(Complex w, double p) { return cpow(w, Complex(p, 0.0)); }

// Like cpow, but a negative real base takes arg = -pi. This matches the limit
// from the upper half-plane of the transform side of the power identities.
inline Complex cpow_lower(Complex w, double p) {
    if (w.imag() == 0.0 && w.real() < 0.0)
        return std::exp(p * Complex(std::log(-w.real()), -std::acos(-1.0)));
    return cpow(w, p);
}

// Integer power by squaring; exact for small exponents.
inline Complex ipow(Complex w, int n) {
    if (n < 0) return 1.0 / ipow(w, -n);
    Complex r = 1.0, b = w;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// sqrt(z^2 - 1) on the branch asymptotic to z at infinity (cut on [-1,1]).
inline Complex sqrt_z2m1(Complex z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

// sqrt(z(z-1)) on the branch asymptotic to z at infinity (cut on [0,1]).
inline Complex sqrt_zzm1(Complex z) { return std::sqrt(z) * std::sqrt(z - 1.0); }

inline bool on_cut_from_one(Complex z) { return z.imag() == 0.0 && z.real() >= 1.0; }

// True when z is (numerically) a nonpositive integer.
inline bool is_nonpos_int(Complex z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= 0.5 && std::abs(z.real() - r) <= tol && r <= 0.0;
}

// Distance of a complex number to the nearest integer on the real axis.
inline double int_dist(Complex z) {
    return std::abs(z.real() - std::round(z.real())) + std::abs(z.imag());
}

inline double dist_to_interval(Complex z, double lo, double hi) {
    double dx = 0.0;
    if (z.real() < lo) dx = lo - z.real();
    else if (z.real() > hi) dx = z.real() - hi;
    return std::hypot(dx, z.imag());
}

} // namespace gstlab
