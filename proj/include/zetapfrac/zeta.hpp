#pragma once

#include "zetapfrac/bernoulli.hpp"
#include "zetapfrac/complex.hpp"
#include "zetapfrac/gamma.hpp"

#include <cmath>

namespace zetapfrac {

namespace detail {

struct em_params {
    unsigned long n_cut = 16;
    int m_bernoulli = 8;
};

// Pick (N, M) for the Euler-Maclaurin formula so that the standard remainder
// bound
//   |R| <= |B_{2M+2}/(2M+2)!| |(s)_{2M+1}| N^{-sigma-2M-1} |s+2M+1|/(sigma+2M+1)
// falls below the target, minimising (cost of main sum) + (cost of tail).
// The search runs in doubles; the bound itself is re-evaluated exactly later.
inline em_params choose_em(double sigma, double t, int work_digits)
{
    const double ln_eps = -(work_digits + 4) * 2.302585092994046;
    const double ln2pi = 1.8378770664093455;
    em_params best;
    double best_cost = 1e300;
    for (int M : {4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384}) {
        if (sigma <= -(2.0 * M + 1) + 1)
            continue;
        double lhs = std::log(2.0);
        for (int j = 0; j <= 2 * M; ++j)
            lhs += 0.5 * std::log((sigma + j) * (sigma + j) + t * t);
        lhs -= (2 * M + 2) * ln2pi;
        double smag = std::hypot(sigma + 2 * M + 1, t);
        lhs += std::log(std::max(1.0, smag / (sigma + 2 * M + 1)));
        double lnN = (lhs - ln_eps) / (sigma + 2 * M + 1);
        double N = std::exp(std::min(40.0, std::max(0.0, lnN)));
        if (N > 5e7)
            continue;
        double cost = N + 6.0 * M;
        if (cost < best_cost) {
            best_cost = cost;
            best.n_cut = static_cast<unsigned long>(std::ceil(N)) + 2;
            best.m_bernoulli = M;
        }
    }
    if (best_cost >= 1e300)
        throw convergence_error("zeta: no Euler-Maclaurin parameters meet the target");
    return best;
}

// Core Euler-Maclaurin evaluation.  With fold_pole the function computes
// (s-1) zeta(s) instead, replacing the N^{1-s}/(s-1) term by N^{1-s}; that
// variant is entire and is what xi uses near s = 1.
inline complex_value zeta_em(const complex_value& s, bool fold_pole)
{
    const int wd = static_cast<int>(Real::default_precision());
    em_params p = choose_em(static_cast<double>(s.re), static_cast<double>(s.im), wd);
    const unsigned long N = p.n_cut;
    const int M = p.m_bernoulli;

    complex_value minus_s = -s;
    complex_value main_sum(Real(1)); // n = 1 term
    for (unsigned long n = 2; n < N; ++n) {
        Real ln = cached_ln(n);
        main_sum += exp(complex_value(minus_s.re * ln, minus_s.im * ln));
    }
    Real lnN = cached_ln(N);
    complex_value Npow = exp(complex_value(minus_s.re * lnN, minus_s.im * lnN)); // N^{-s}

    // correction terms T_k = B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    complex_value tail = Real(1) / 2 * Npow;
    complex_value poch = s;                       // (s)_1
    complex_value pw = Npow / Real(N);            // N^{-s-1}
    Real invN2 = Real(1) / (Real(N) * Real(N));
    for (int k = 1; k <= M; ++k) {
        tail += bernoulli_b2k_over_factorial(k) * (poch * pw);
        poch *= (s + complex_value(Real(2 * k - 1))) * (s + complex_value(Real(2 * k)));
        pw = pw * invN2;
    }
    // remainder bound uses the same pieces at k = M+1
    Real rem = abs(bernoulli_b2k_over_factorial(M + 1)) * abs(poch) / abs(pow(Real(N), s.re + 2 * M + 1));
    rem *= abs(s + complex_value(Real(2 * M + 1))) / (s.re + 2 * M + 1);

    complex_value result;
    if (fold_pole) {
        complex_value sm1 = s - complex_value(Real(1));
        result = sm1 * (main_sum + tail) + Real(N) * Npow;
        rem *= abs(sm1);
    } else {
        result = main_sum + tail + (Real(N) * Npow) / (s - complex_value(Real(1)));
    }
    result.err += rem + Real(N) * work_eps() * mag_bound(main_sum);
    if (!s.err.is_zero())
        result.err += s.err * (2 + lnN) * (mag_bound(result) + 1);
    return result;
}

inline complex_value zeta_impl(const complex_value& s, int digits, bool fold_pole)
{
    if (s.re >= 0)
        return zeta_em(s, fold_pole);
    // functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) G(1-s) zeta(1-s)
    complex_value one_minus(Real(1) - s.re, -s.im, s.err);
    complex_value refl = pow_real_base(Real(2), s) * pow_real_base(const_pi(), s - complex_value(Real(1))) *
                         sin_pi(complex_value(s.re / 2, s.im / 2, s.err / 2)) * gamma_impl(one_minus, digits) *
                         zeta_em(one_minus, false);
    if (fold_pole)
        refl = (s - complex_value(Real(1))) * refl;
    return refl;
}

} // namespace detail

// zeta(z) by Euler-Maclaurin summation, reflected through the functional
// equation for Re(z) < 0.
inline complex_value complex_zeta(const complex_value& z, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (abs(z.re - 1) + abs(z.im) < pow(Real(10), -ctx.digits))
        throw pole_error("zeta pole at z = 1");
    return detail::zeta_impl(z, ctx.digits, false);
}

// (z - 1) zeta(z): entire, safe arbitrarily close to (and at) z = 1.
inline complex_value zeta_times_s_minus_1(const complex_value& z, const precision_context& ctx)
{
    precision_scope scope(ctx);
    return detail::zeta_impl(z, ctx.digits, true);
}

inline Real real_zeta(const Real& x, const precision_context& ctx)
{
    return complex_zeta(complex_value(x), ctx).re;
}

} // namespace zetapfrac
