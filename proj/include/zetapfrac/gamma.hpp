#pragma once

#include "zetapfrac/bernoulli.hpp"
#include "zetapfrac/complex.hpp"

namespace zetapfrac {

namespace detail {

// Binet/Stirling series for log Gamma of a right-half-plane argument:
//
//   log G(w) = (w - 1/2) log w - w + (1/2) log(2 pi)
//            + sum_{k>=1} B_{2k} / (2k (2k-1) w^{2k-1})
//
// After K terms the remainder is bounded by the magnitude of the next term
// times sec(arg(w)/2)^{2K+3}.  The caller shifts w far enough to the right
// that the series bottoms out below eps before it starts diverging; `ok`
// reports whether that happened.
inline complex_value log_gamma_stirling(const complex_value& w, const Real& eps_abs, bool& ok)
{
    complex_value lw = log(w);
    complex_value acc = (w - complex_value(Real(1) / 2)) * lw - w + complex_value(const_ln_2pi() / 2);
    Real aw = abs(w);
    Real sec_half = 1 / cos(atan2(abs(w.im), abs(w.re)) / 2);
    complex_value inv_w2 = complex_value(Real(1)) / (w * w);
    complex_value wpow = complex_value(Real(1)) / w; // w^{-(2k-1)}
    Real apow = 1 / aw;
    Real secpow = sec_half * sec_half * sec_half;
    Real prev_bound;
    bool have_prev = false;
    ok = false;
    for (std::size_t k = 1; k <= 512; ++k) {
        Real coeff = bernoulli_b2k(k) / Real(2 * k * (2 * k - 1));
        Real bound = abs(coeff) * apow * secpow;
        if (bound <= eps_abs) {
            acc.err += bound;
            ok = true;
            break;
        }
        if (have_prev && bound > prev_bound)
            break; // asymptotic series turned around before reaching eps
        prev_bound = bound;
        have_prev = true;
        acc += coeff * wpow;
        wpow *= inv_w2;
        apow /= aw * aw;
        secpow *= sec_half * sec_half;
    }
    return acc;
}

inline complex_value gamma_impl(const complex_value& z, int digits)
{
    // reflection for the left half-plane; poles are exactly the nonpositive
    // integers there
    if (z.re < Real(1) / 2) {
        Real m = round(z.re);
        if (m <= 0) {
            Real dist = abs(z.re - m) + abs(z.im);
            if (dist < pow(Real(10), 1 - digits) * (1 + abs(m)))
                throw pole_error("gamma pole at nonpositive integer " + m.str(0));
        }
        complex_value one_minus(Real(1) - z.re, -z.im, z.err);
        complex_value s = sin_pi(z);
        return complex_value(const_pi()) / (s * gamma_impl(one_minus, digits));
    }

    int wd = static_cast<int>(Real::default_precision());
    Real eps_abs = pow(Real(10), -(wd + 2));
    double rshift = 0.4 * wd + 6.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        double t = static_cast<double>(z.im);
        double need = std::max(2.0, std::sqrt(std::max(0.0, rshift * rshift - t * t)));
        long n = 0;
        double x = static_cast<double>(z.re);
        if (x < need)
            n = static_cast<long>(need - x) + 1;
        complex_value w = z + complex_value(Real(n));
        bool ok = false;
        complex_value lg = log_gamma_stirling(w, eps_abs, ok);
        if (!ok) {
            rshift *= 1.4;
            continue;
        }
        complex_value g = exp(lg);
        // divide out the shift product G(z) = G(z+n) / (z (z+1) ... (z+n-1))
        for (long j = 0; j < n; ++j)
            g = g / (z + complex_value(Real(j)));
        return g;
    }
    throw convergence_error("gamma: Stirling series failed to converge after shifting");
}

} // namespace detail

// Gamma(z) with reflection handling Re(z) <= 0.  Relative error is held well
// below 10^{1-digits}; the attached estimate covers both the series remainder
// and the input's own error bound.
inline complex_value complex_gamma(const complex_value& z, const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_value g = detail::gamma_impl(z, ctx.digits);
    // d/dz log G ~ log|z| + 2 for moderate z; fold the input error through it
    Real psi_bound = log(2 + abs(z)) + 2;
    g.err += mag_bound(g) * (z.err * psi_bound + pow(Real(10), -(ctx.working_digits() - 8)));
    return g;
}

inline Real real_gamma(const Real& x, const precision_context& ctx)
{
    return complex_gamma(complex_value(x), ctx).re;
}

} // namespace zetapfrac
