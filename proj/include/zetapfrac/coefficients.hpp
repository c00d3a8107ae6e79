#pragma once

#include "zetapfrac/zero_table.hpp"

namespace zetapfrac {

// Residue coefficient families of f = 1/n:
//   c(z) = 1/n'(z)
//   real axis:      c(4w) = ctilde(4|w|) (-pi^2)^{|w|}
//   imaginary axis: c(i gamma_k) = 1/( b(i gamma_k) zeta'(1/2 + i gamma_k) ), real

struct real_pole {
    long w = 0;
};
struct imag_pole {
    std::size_t k = 1;
};

// ctilde(4k) = 1 / ( pi^{3/4} G(5/4 + 2k) (2k - 1/4) zeta(1/2 + 4k) ), > 0.
// For k = 0 both (2k - 1/4) and zeta(1/2) are negative.  Memoized per
// precision; the p_r / P_0 loops hit these values constantly.
inline Real c_tilde(unsigned k, const precision_context& ctx)
{
    precision_scope scope(ctx);
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, Real> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find({Real::default_precision(), k});
        if (it != memo.end())
            return it->second;
    }
    Real g = real_gamma(Real(5) / 4 + 2 * Real(k), ctx);
    Real z = real_zeta(Real(1) / 2 + 4 * Real(k), ctx);
    Real v = 1 / (pow(const_pi(), Real(3) / 4) * g * (2 * Real(k) - Real(1) / 4) * z);
    if (!(v > 0))
        throw assertion_error("c_tilde(4k) must be positive; got " + v.str(6) + " at k=" + std::to_string(k));
    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(std::make_pair(Real::default_precision(), k), v);
    return v;
}

inline Real c_at(real_pole pole, const precision_context& ctx)
{
    precision_scope scope(ctx);
    unsigned w = static_cast<unsigned>(pole.w < 0 ? -pole.w : pole.w); // even in w
    Real ct = c_tilde(w, ctx);
    if (w == 0)
        return ct;
    Real pi2 = const_pi() * const_pi();
    Real factor = pow(pi2, Real(static_cast<int>(w)));
    return (w % 2 == 0) ? ct * factor : -ct * factor; // (-pi^2)^w
}

// c(i gamma_k) through the product form; the imaginary part is provably zero
// and must sit inside ten error estimates.
inline Real c_at(imag_pole pole, const zero_cache& cache, const precision_context& ctx)
{
    precision_scope scope(ctx);
    const zero_record& rec = cache.at(pole.k);
    // the stored ordinate carries the bisection width as its uncertainty
    Real gamma_err = pow(Real(10), -(cache.digits - 5));
    complex_value b = eval_block(block_name::b, complex_value(Real(0), rec.gamma, gamma_err), ctx);
    complex_value c = complex_value(Real(1)) / (b * rec.zeta_prime);
    Real budget = 10 * (c.err + mag_bound(c) * pow(Real(10), 4 - ctx.working_digits()));
    if (abs(c.im) > budget)
        throw realness_violation("c(i gamma_k) has |Im| = " + abs(c.im).str(4) + " above budget at k=" +
                                 std::to_string(pole.k));
    return c.re;
}

// Fill the c_imag column for every record.
inline void fill_c_imag(zero_cache& cache, const precision_context& ctx)
{
    parallel_for(cache.count(), [&](std::size_t i) {
        cache.records[i].c_imag = c_at(imag_pole{i + 1}, cache, ctx);
        cache.records[i].has_c = true;
    });
}

// P_0(z) = - sum_{k>=1} ctilde(4k) (-z^2)^k, entire; terms decay factorially.
inline complex_value p0_eval(const complex_value& z, const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_value mz2 = -(z * z);
    complex_value term(Real(1));
    complex_value acc(Real(0));
    Real running_max(0);
    Real cutoff = pow(Real(10), -ctx.digits);
    for (long k = 1; k <= ctx.max_series_terms; ++k) {
        term *= mz2;
        complex_value t = c_tilde(static_cast<unsigned>(k), ctx) * term;
        acc -= t;
        Real m = mag_bound(t);
        if (m > running_max)
            running_max = m;
        if (m < cutoff * (running_max + 1)) {
            acc.err += m; // truncation bound: factorial decay beats geometric
            return acc;
        }
    }
    throw cap_error("p0_eval: series cap reached at |z| = " + abs(z).str(6));
}

// Power-law fit |c(i gamma_k)| ~ exp(log_k) gamma^{-p} over the top half of
// the table; feeds every tail estimate downstream.
struct decay_fit {
    Real log_k;
    Real p;
    Real gamma_top; // last ordinate used
};

inline decay_fit fit_c_decay(const zero_cache& cache, const precision_context& ctx)
{
    precision_scope scope(ctx);
    std::size_t n = cache.count();
    if (n < 8)
        throw insufficient_data_error("fit_c_decay: need at least 8 filled records");
    std::size_t lo = n / 2;
    Real sx(0), sy(0), sxx(0), sxy(0), m(0);
    for (std::size_t k = lo; k < n; ++k) {
        const zero_record& r = cache.records[k];
        if (!r.has_c)
            throw insufficient_data_error("fit_c_decay: c_imag column not filled");
        Real x = log(r.gamma), y = log(abs(r.c_imag));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1;
    }
    Real slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    Real inter = (sy - slope * sx) / m;
    return {inter, -slope, cache.records[n - 1].gamma};
}

namespace detail {

// int_x^inf g^{-a} ln^m(g) dg for a > 1, m in {0, 1, 2}.
inline Real log_power_tail(const Real& x, const Real& a, int m)
{
    Real am1 = a - 1;
    Real base = pow(x, -am1);
    Real lx = log(x);
    switch (m) {
    case 0:
        return base / am1;
    case 1:
        return base * (lx / am1 + 1 / (am1 * am1));
    case 2:
        return base * (lx * lx / am1 + 2 * lx / (am1 * am1) + 2 / (am1 * am1 * am1));
    }
    throw domain_error("log_power_tail: m must be 0, 1 or 2");
}

// Estimate sum over gamma_k > x of |c_k| ln^m(gamma) / gamma^q using the
// fitted power law and the smooth zero density ln(g/2pi)/2pi.
inline Real fitted_tail(const decay_fit& fit, const Real& x, const Real& q, int extra_log)
{
    Real a = fit.p + q;
    Real two_pi = 2 * const_pi();
    Real i_hi = log_power_tail(x, a, extra_log + 1);
    Real i_lo = log_power_tail(x, a, extra_log);
    return exp(fit.log_k) * (i_hi - log(two_pi) * i_lo) / two_pi;
}

} // namespace detail

// Partial sums A_N, B_N, C_N with empirical tail estimates.
struct series_constants_result {
    Real a_partial, b_partial, c_partial;
    Real a_tail, b_tail, c_tail;
    decay_fit fit;
};

inline series_constants_result series_constants(const zero_cache& cache, std::size_t n, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (n > cache.count())
        throw index_error("series_constants: cutoff beyond the cache");
    Real A(0), B(0), C(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const zero_record& r = cache.at(k);
        if (!r.has_c)
            throw insufficient_data_error("series_constants: c_imag column not filled");
        Real ac = abs(r.c_imag);
        A += 2 * ac;
        B += ac / r.delta_prime;
        C += ac / (r.gamma * r.gamma);
    }
    decay_fit fit = fit_c_decay(cache, ctx);
    Real from = cache.at(n).gamma;
    series_constants_result res{A, B, C, Real(0), Real(0), Real(0), fit};
    res.a_tail = 2 * detail::fitted_tail(fit, from, Real(0), 0);
    // delta' is 1/ln(gamma) for all but pathologically close pairs, so the
    // B-tail carries one extra log factor
    res.b_tail = detail::fitted_tail(fit, from, Real(0), 1);
    res.c_tail = detail::fitted_tail(fit, from, Real(2), 0);
    return res;
}

} // namespace zetapfrac
