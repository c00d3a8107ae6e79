#pragma once

#include "zetapfrac/zero_table.hpp"

#include <map>
#include <vector>

namespace zetapfrac {

// Finite truncation of the Appendix's product class
//   E(s) = K prod_m (1 - s/(i phi_m)) prod_k (1 + (s/theta_k)^2)
// All monotonicity statements hold factor-by-factor, so they hold for every
// finite truncation; descriptors are always finite here.
struct product_descriptor {
    Real scale{1};
    std::vector<Real> phis;   // nonzero reals
    std::vector<Real> thetas; // positive reals, ascending

    void validate() const
    {
        if (scale.is_zero())
            throw config_error("product_descriptor: K must be nonzero");
        for (const Real& p : phis)
            if (p.is_zero())
                throw config_error("product_descriptor: phi factors must be nonzero");
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            if (!(thetas[i] > 0))
                throw config_error("product_descriptor: theta factors must be positive");
            if (i && !(thetas[i - 1] <= thetas[i]))
                throw config_error("product_descriptor: thetas must ascend");
        }
    }
};

// xi(1/2 + s) as a truncated Hadamard product: K = xi(1/2), thetas = gamma_k.
inline product_descriptor product_from_zeros(const zero_cache& cache, std::size_t k_terms,
                                             const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (k_terms > cache.count())
        throw index_error("product_from_zeros: not enough zeros in the cache");
    product_descriptor desc;
    desc.scale = detail::eval_xi(complex_value(Real(1) / 2), ctx.digits).re;
    for (std::size_t k = 1; k <= k_terms; ++k)
        desc.thetas.push_back(cache.at(k).gamma);
    return desc;
}

inline complex_value eval_product(const product_descriptor& desc, const complex_value& s)
{
    complex_value acc(desc.scale);
    for (const Real& p : desc.phis) {
        // 1 - s/(i p) = 1 + i s / p
        acc *= complex_value(Real(1) - s.im / p, s.re / p, s.err / abs(p));
    }
    for (const Real& th : desc.thetas) {
        complex_value q(s.re / th, s.im / th, s.err / th);
        acc *= complex_value(Real(1)) + q * q;
    }
    return acc;
}

struct hadamard_result {
    complex_value product;
    Real rel_gap; // |product - xi(1/2+s)| / |xi(1/2+s)| at the truncation
};

inline hadamard_result hadamard_xi(const complex_value& s, std::size_t k_terms, const zero_cache& cache,
                                   const precision_context& ctx)
{
    precision_scope scope(ctx);
    product_descriptor desc = product_from_zeros(cache, k_terms, ctx);
    complex_value prod = eval_product(desc, s);
    complex_value direct = detail::eval_xi(complex_value(Real(1) / 2) + s, ctx.digits);
    return {prod, abs(prod - direct) / abs(direct)};
}

// |E(sqrt(v) + it)| along an increasing v-grid; returns the indices where the
// profile fails to increase beyond the noise allowance.  Lemma 2.3 says the
// contract is an empty list.
inline std::vector<std::size_t> monotone_profile(const product_descriptor& desc, const Real& t,
                                                 const std::vector<Real>& v_grid, const precision_context& ctx)
{
    precision_scope scope(ctx);
    desc.validate();
    std::vector<std::size_t> violations;
    Real prev, prev_err;
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        if (i && !(v_grid[i] > v_grid[i - 1]))
            throw domain_error("monotone_profile: v_grid must increase strictly");
        if (!(v_grid[i] > 0))
            throw domain_error("monotone_profile: v must be positive");
        complex_value e = eval_product(desc, complex_value(sqrt(v_grid[i]), t));
        Real cur = abs(e), cur_err = e.err;
        if (i && cur - prev <= -(cur_err + prev_err))
            violations.push_back(i);
        prev = cur;
        prev_err = cur_err;
    }
    return violations;
}

struct monotone_sign_table {
    std::vector<Real> forward_diffs; // Delta^j g(v0), j = 0..J
    std::vector<bool> sign_ok;       // (-1)^j Delta^j g >= -tolerance
    bool all_ok = true;
};

// Finite-difference surrogate for complete monotonicity of
// g(v) = |E(sqrt(v) + it)|^{-2}: the alternating forward differences stay
// nonnegative up to a cancellation allowance of 10^{-digits/3}.
inline monotone_sign_table complete_monotone_check(const product_descriptor& desc, const Real& t, const Real& v0,
                                                   const Real& h, int j_max, const precision_context& ctx)
{
    precision_scope scope(ctx);
    desc.validate();
    if (!(v0 > 0) || !(h > 0))
        throw domain_error("complete_monotone_check: v0 and h must be positive");
    if (j_max < 0 || j_max > 6)
        throw domain_error("complete_monotone_check: J must lie in [0, 6]");
    if (j_max >= 1 && h > v0 / (2 * j_max))
        throw step_error("complete_monotone_check: step too large, need h <= v0/(2J)");

    std::vector<Real> g(static_cast<std::size_t>(j_max) + 1);
    for (int i = 0; i <= j_max; ++i) {
        complex_value e = eval_product(desc, complex_value(sqrt(v0 + i * h), t));
        Real m = abs(e);
        g[static_cast<std::size_t>(i)] = 1 / (m * m);
    }
    Real tolerance = pow(Real(10), -ctx.digits / 3) * (1 + g[0]);

    monotone_sign_table out;
    for (int j = 0; j <= j_max; ++j) {
        // Delta^j g(v0) = sum_i (-1)^{j-i} C(j,i) g(v0 + i h)
        Real diff(0);
        Real binom(1);
        for (int i = 0; i <= j; ++i) {
            Real term = binom * g[static_cast<std::size_t>(i)];
            diff += ((j - i) % 2 == 0) ? term : -term;
            binom = binom * (j - i) / (i + 1);
        }
        out.forward_diffs.push_back(diff);
        bool ok = (((j % 2 == 0) ? diff : -diff) >= -tolerance);
        out.sign_ok.push_back(ok);
        out.all_ok = out.all_ok && ok;
    }
    return out;
}

// Corollary 2.3: 1/| sin((pi/a) s) E(s) | strictly decreases as x runs from 0
// to a/2 at fixed t.  Returns violation indices; contract is empty.
inline std::vector<std::size_t> sin_product_decrease(const Real& a, const product_descriptor& desc, const Real& t,
                                                     const std::vector<Real>& x_grid, const precision_context& ctx)
{
    precision_scope scope(ctx);
    desc.validate();
    if (!(a > 0))
        throw domain_error("sin_product_decrease: a must be positive");
    std::vector<std::size_t> violations;
    Real prev, prev_err;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0 && x_grid[i] < a / 2))
            throw domain_error("sin_product_decrease: grid must lie in (0, a/2)");
        if (i && !(x_grid[i] > x_grid[i - 1]))
            throw domain_error("sin_product_decrease: grid must increase strictly");
        complex_value s(x_grid[i], t);
        complex_value denom = sin_pi(complex_value(s.re / a, s.im / a, s.err / a)) * eval_product(desc, s);
        complex_value v = complex_value(Real(1)) / denom;
        Real cur = abs(v), cur_err = v.err;
        if (i && cur - prev >= cur_err + prev_err)
            violations.push_back(i);
        prev = cur;
        prev_err = cur_err;
    }
    return violations;
}

struct sin_recip_result {
    Real recip_sin; // 1/|sin z|
    Real envelope;  // e^{-|t|}
    Real ratio;     // their quotient; sup over a sample set fits eps(d)
};

// Subclaim of Part III, section 1: away from pi Z by at least d,
// 1/|sin z| <= e^{-|t|} eps(d).
inline sin_recip_result sin_recip_bound(const complex_value& z, const Real& d, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (!(d > 0))
        throw domain_error("sin_recip_bound: d must be positive");
    Real m = round(z.re / const_pi());
    Real dist = abs(z - complex_value(m * const_pi()));
    if (dist < d)
        throw domain_error("sin_recip_bound: z is inside an excluded disk around pi Z");
    Real s = abs(sin(z));
    Real envelope = exp(-abs(z.im));
    return {1 / s, envelope, envelope / s};
}

struct b_bound_result {
    Real lhs; // 1/|b(s)|
    Real rhs; // |s|^{-7/4} (2 e pi / |s|)^{x/2} K'(d), fitted K' with 10% slack
};

namespace detail {

inline Real b_bound_envelope(const complex_value& s, const precision_context& ctx)
{
    Real as = abs(s);
    return pow(as, Real(-7) / 4) * pow(2 * exp(Real(1)) * const_pi() / as, s.re / 2);
}

// K'(d) from a fixed calibration fan on S - B_r(d) with Re(s) >= 0; memoized
// per (precision, d).
inline Real calibrate_b_bound(const Real& d, const precision_context& ctx)
{
    static std::mutex mu;
    static std::map<std::pair<unsigned, std::string>, Real> memo;
    std::string key_d = d.str(8);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find({Real::default_precision(), key_d});
        if (it != memo.end())
            return it->second;
    }
    Real best(0);
    auto consider = [&](const complex_value& s) {
        if (s.re < Real(1) / 2)
            return; // S with Re(s) >= 0 reduces to Re(s) >= 1/2
        if (abs(s - complex_value(4 * round(s.re / 4))) <= d)
            return;
        Real ratio = (1 / abs(eval_block(block_name::b, s, ctx))) / b_bound_envelope(s, ctx);
        if (ratio > best)
            best = ratio;
    };
    // the ratio peaks along the strip boundary Re(s) = 1/2, so sample it
    // densely there and fan the interior
    for (double t : {3.0, 5.0, 8.0, 13.0, 21.0, 34.0, 55.0, 90.0, 145.0})
        consider(complex_value(Real(1) / 2, Real(t)));
    for (double radius : {6.0, 9.0, 14.0, 22.0, 36.0, 60.0, 95.0, 140.0})
        for (int j = 0; j < 17; ++j) {
            double phi = -1.55 + 3.10 * j / 16.0;
            consider(complex_value(Real(radius * std::cos(phi)), Real(radius * std::sin(phi))));
        }
    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(std::make_pair(Real::default_precision(), key_d), best);
    return best;
}

} // namespace detail

// Claim 1 of section 1: 1/|b(s)| <= |s|^{-7/4} (2 e pi/|s|)^{x/2} K'(d) on
// S - B_r(d) with Re(s) >= 0.
inline b_bound_result b_lower_bound_check(const complex_value& s, const Real& d, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (s.re < 0 || abs(s.re) < Real(1) / 2)
        throw domain_error("b_lower_bound_check: need s in S with Re(s) >= 0");
    if (abs(s - complex_value(4 * round(s.re / 4))) <= d)
        throw domain_error("b_lower_bound_check: s inside B_r(d)");
    Real lhs = 1 / abs(eval_block(block_name::b, s, ctx));
    Real rhs = detail::b_bound_envelope(s, ctx) * detail::calibrate_b_bound(d, ctx) * (Real(11) / 10);
    return {lhs, rhs};
}

struct zeta_ratio_result {
    Real lhs_ratio; // |zeta(1/2 - s*)| / |zeta(1/2 + s)|
    Real model;     // (|t| / 2 pi)^x
};

// Claim 2.6 asymptotic; deviation decays like C/|t|.
inline zeta_ratio_result zeta_ratio_check(const complex_value& s, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (s.im.is_zero())
        throw domain_error("zeta_ratio_check: need |Im(s)| > 0");
    if (s.re < 0)
        throw domain_error("zeta_ratio_check: need Re(s) >= 0");
    complex_value refl(Real(1) / 2 - s.re, s.im, s.err); // 1/2 - s* for s = x+it
    complex_value num = detail::zeta_impl(refl, ctx.digits, false);
    complex_value den = detail::zeta_impl(complex_value(Real(1) / 2 + s.re, s.im, s.err), ctx.digits, false);
    Real model = pow(abs(s.im) / (2 * const_pi()), s.re);
    return {abs(num) / abs(den), model};
}

// D(t0, K) = { x + it : t >= t0, 0 <= x <= K/log t }.
struct region_d {
    Real t0;
    Real cap; // the K in K/log(t)
};

// S'(k): semi-disk Re(s) >= 0, |s - i gamma_k| <= 1/log(gamma_k).
struct region_s_prime {
    std::size_t k;
};

inline bool region_member(const complex_value& s, const region_d& d)
{
    if (!(d.t0 > 1) || d.cap < 0)
        throw domain_error("region_member: need t0 > 1 and K >= 0");
    return s.im >= d.t0 && s.re >= 0 && s.re <= d.cap / log(s.im);
}

inline bool region_member(const complex_value& s, const region_s_prime& r, const zero_cache& cache)
{
    const zero_record& rec = cache.at(r.k);
    return s.re >= 0 && abs(s - complex_value(Real(0), rec.gamma)) <= 1 / log(rec.gamma);
}

// Appendix factor h(z, u, r) = r^{-2} (z + (u - r)^2); with v = x^2 this is
// |1 - s/(ir)|^2 for s = x + iu.
inline Real h_factor(const Real& z, const Real& u, const Real& r)
{
    if (r.is_zero())
        throw domain_error("h_factor: r must be nonzero");
    return (z + (u - r) * (u - r)) / (r * r);
}

} // namespace zetapfrac
