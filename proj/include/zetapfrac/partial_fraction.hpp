#pragma once

#include "zetapfrac/coefficients.hpp"
#include "zetapfrac/derivative.hpp"

#include <vector>

namespace zetapfrac {

// Truncation of the two pole families: real poles 4w for |w| <= w_cut with
// disk radius d, imaginary poles +-i gamma_k for k <= n_cut with disk radius
// alpha delta_k'.
struct expansion_truncation {
    std::size_t w_cut = 50;
    std::size_t n_cut = 100;
    Real d{2};
    Real alpha{Real(1) / 4};

    void validate() const
    {
        if (!(d > 0 && d <= 2))
            throw config_error("expansion_truncation: d must lie in (0, 2]");
        if (!(alpha > 0 && alpha < Real(1) / 2))
            throw config_error("expansion_truncation: alpha must lie in (0, 1/2)");
        if (w_cut < 1 || n_cut < 1)
            throw config_error("expansion_truncation: cutoffs must be positive");
    }
};

struct region_tag {
    enum class kind { real_disk, imag_disk, exterior };
    kind where = kind::exterior;
    long w = 0;            // real_disk: s in B(4w, d)
    long k = 0;            // imag_disk: s in B(sign(k) i gamma_|k|, alpha delta'_|k|)
    bool s_member = false; // |Re(s)| >= 1/2
};

// Nearest-pole membership test; disks are closed per the paper's definition
// and pairwise disjoint by construction (4-spaced real poles with d <= 2,
// gap-capped radii on the imaginary axis).
inline region_tag classify(const complex_value& s, const expansion_truncation& trunc, const zero_cache& cache)
{
    trunc.validate();
    region_tag tag;
    tag.s_member = abs(s.re) >= Real(1) / 2;

    Real w_near = round(s.re / 4);
    if (abs(s - complex_value(4 * w_near)) <= trunc.d) {
        tag.where = region_tag::kind::real_disk;
        tag.w = static_cast<long>(w_near);
        return tag;
    }
    Real im = abs(s.im);
    for (std::size_t k = 1; k <= cache.count(); ++k) {
        const zero_record& r = cache.at(k);
        if (im < r.gamma - 1)
            break; // ordinates ascend and radii stay below 1/2
        complex_value center(Real(0), s.im >= 0 ? r.gamma : -r.gamma);
        if (abs(s - center) <= trunc.alpha * r.delta_prime) {
            tag.where = region_tag::kind::imag_disk;
            tag.k = s.im >= 0 ? static_cast<long>(k) : -static_cast<long>(k);
            return tag;
        }
    }
    return tag;
}

struct truncated_value {
    complex_value value; // partial sum; numeric error rides in value.err
    Real tail_bound{0};  // bound/estimate for the omitted terms
};

// p_r(s) = c(0)/s + sum_{w=1..W} c(4w) ( 1/(s-4w) + 1/(s+4w) ).  The omitted
// coefficients decay factorially, so a geometric envelope on |c(4(W+1))|
// divided by the distance to the first omitted pole pair bounds the tail.
inline truncated_value p_r_eval(const complex_value& s, std::size_t w_cut, const precision_context& ctx)
{
    precision_scope scope(ctx);
    Real w_near = round(s.re / 4);
    if (abs(s - complex_value(4 * w_near)) < pow(Real(10), -ctx.digits) &&
        abs(w_near) <= Real(static_cast<unsigned long>(w_cut)))
        throw pole_error("p_r_eval at a pole of the truncation");

    complex_value acc = complex_value(c_at(real_pole{0}, ctx)) / s;
    for (std::size_t w = 1; w <= w_cut; ++w) {
        complex_value four_w(Real(4 * static_cast<unsigned long>(w)));
        acc += c_at(real_pole{static_cast<long>(w)}, ctx) *
               (complex_value(Real(1)) / (s - four_w) + complex_value(Real(1)) / (s + four_w));
    }

    Real c_next = abs(c_at(real_pole{static_cast<long>(w_cut) + 1}, ctx));
    Real ratio = abs(c_at(real_pole{static_cast<long>(w_cut) + 2}, ctx)) / c_next;
    Real first_center(4 * (static_cast<unsigned long>(w_cut) + 1));
    Real dist = abs(s - complex_value(first_center));
    Real dist_m = abs(s + complex_value(first_center));
    if (dist_m < dist)
        dist = dist_m;
    return {acc, 2 * c_next / ((1 - ratio) * dist)};
}

// p_i(s) = 2s sum_{k=1..N} c(i gamma_k) / (s^2 + gamma_k^2), the symmetric
// form; tail estimated from the fitted |c| decay against the smooth zero
// density.
inline truncated_value p_i_eval(const complex_value& s, std::size_t n_cut, const zero_cache& cache,
                                const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (n_cut > cache.count() || n_cut == 0)
        throw index_error("p_i_eval: cutoff outside the cache");
    complex_value s2 = s * s;
    complex_value acc(Real(0));
    for (std::size_t k = 1; k <= n_cut; ++k) {
        const zero_record& r = cache.at(k);
        if (!r.has_c)
            throw insufficient_data_error("p_i_eval: c_imag column not filled");
        complex_value denom = s2 + complex_value(r.gamma * r.gamma);
        if (abs(denom) < pow(Real(10), -ctx.digits) * r.gamma * r.gamma)
            throw pole_error("p_i_eval at a pole of the truncation (k=" + std::to_string(k) + ")");
        acc += r.c_imag * (complex_value(Real(1)) / denom);
    }
    acc = (Real(2) * s) * acc;

    decay_fit fit = fit_c_decay(cache, ctx);
    Real gamma_n = cache.at(n_cut).gamma;
    Real as = abs(s);
    Real base = detail::fitted_tail(fit, gamma_n, Real(2), 0);
    Real factor;
    if (as < Real(85) / 100 * gamma_n)
        factor = gamma_n * gamma_n / (gamma_n * gamma_n - as * as);
    else
        factor = 8; // evaluation point rubbing against the first omitted poles
    return {acc, 2 * as * factor * base};
}

struct delta_result {
    complex_value delta; // f - p_r - p_i with accumulated numeric error
    Real tail_budget;    // truncation tails plus the numeric error
};

// Delta(s) = f(s) - p(s) at the given truncation.  Values within 1e-3 of a
// truncation pole are refused: both sides blow up there and only the
// analytic extension (see local_term) is meaningful.
inline delta_result delta_eval(const complex_value& s, const expansion_truncation& trunc, const zero_cache& cache,
                               const precision_context& ctx)
{
    precision_scope scope(ctx);
    trunc.validate();
    Real guard = Real(1) / 1000;
    Real w_near = round(s.re / 4);
    if (abs(w_near) <= Real(static_cast<unsigned long>(trunc.w_cut)) &&
        abs(s - complex_value(4 * w_near)) <= guard)
        throw pole_error("delta_eval within the pole guard of a real pole");
    for (std::size_t k = 1; k <= trunc.n_cut; ++k) {
        const Real& g = cache.at(k).gamma;
        if (abs(s - complex_value(Real(0), g)) <= guard || abs(s + complex_value(Real(0), g)) <= guard)
            throw pole_error("delta_eval within the pole guard of an imaginary pole");
    }

    complex_value f = eval_block(block_name::f, s, ctx);
    truncated_value pr = p_r_eval(s, trunc.w_cut, ctx);
    truncated_value pi = p_i_eval(s, trunc.n_cut, cache, ctx);
    complex_value delta = f - pr.value - pi.value;
    return {delta, pr.tail_bound + pi.tail_bound + delta.err};
}

struct local_term_result {
    complex_value t_term;    // c(z)/(s - z) for the region's pole z
    complex_value f_minus_t; // stays finite as s approaches the pole
};

inline local_term_result local_term(const complex_value& s, const region_tag& region, const zero_cache& cache,
                                    const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_value pole;
    Real coeff;
    switch (region.where) {
    case region_tag::kind::real_disk:
        pole = complex_value(Real(4) * Real(region.w));
        coeff = c_at(real_pole{region.w}, ctx);
        break;
    case region_tag::kind::imag_disk: {
        const zero_record& r = cache.at(static_cast<std::size_t>(region.k < 0 ? -region.k : region.k));
        if (!r.has_c)
            throw insufficient_data_error("local_term: c_imag column not filled");
        pole = complex_value(Real(0), region.k >= 0 ? r.gamma : -r.gamma);
        coeff = r.c_imag; // c is even
        break;
    }
    case region_tag::kind::exterior:
        throw domain_error("local_term: s is not inside any pole disk");
    }
    if (abs(s - pole) < pow(Real(10), -(ctx.working_digits() - 10)))
        throw pole_error("local_term exactly at the pole");
    complex_value t = complex_value(coeff) / (s - pole);
    complex_value f = eval_block(block_name::f, s, ctx);
    return {t, f - t};
}

// ---------------------------------------------------------------------------
// Lemma 1.1 machinery on explicit finite pole systems.

struct pole_spec {
    complex_value center;
    Real radius;
    Real coeff_abs;
};

// G'(s) = sum over poles whose disk does not contain s of |c_z| / |s - z|.
inline Real g_prime(const complex_value& s, const std::vector<pole_spec>& poles)
{
    Real acc(0);
    for (const pole_spec& p : poles) {
        Real dist = abs(s - p.center);
        if (dist <= p.radius)
            continue; // I(s) excludes the disk that holds s
        acc += p.coeff_abs / dist;
    }
    return acc;
}

struct a_prime_result {
    Real a_prime;  // sum |c_z| / d_z; uniform bound for G'
    Real r_of_eps; // |s| >= r_of_eps implies G'(s) < eps (direct-proof radius)
};

inline a_prime_result tail_bound_A_prime(const std::vector<pole_spec>& poles, const Real& eps,
                                         const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (poles.empty())
        throw domain_error("tail_bound_A_prime: empty pole list");
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (!(poles[i].radius > 0))
            throw domain_error("tail_bound_A_prime: radii must be positive");
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            if (abs(poles[i].center - poles[j].center) < poles[i].radius + poles[j].radius)
                throw disjointness_error("tail_bound_A_prime: disks " + std::to_string(i) + " and " +
                                         std::to_string(j) + " overlap");
    }
    Real a_prime(0);
    for (const pole_spec& p : poles)
        a_prime += p.coeff_abs / p.radius;

    // direct proof: r(eps) = least radius with sum_{|z| > r} |c|/d < eps/2,
    // m(eps) the largest |z| inside, theta the coefficient mass inside, and
    // R(eps) = m(eps) + (2/eps) theta.
    std::vector<std::pair<Real, std::size_t>> by_mag;
    for (std::size_t i = 0; i < poles.size(); ++i)
        by_mag.emplace_back(abs(poles[i].center), i);
    std::sort(by_mag.begin(), by_mag.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    Real suffix(0);
    std::size_t cut = by_mag.size(); // poles with index >= cut are "outside"
    while (cut > 0) {
        Real candidate = suffix + poles[by_mag[cut - 1].second].coeff_abs / poles[by_mag[cut - 1].second].radius;
        if (candidate >= eps / 2)
            break;
        suffix = candidate;
        --cut;
    }
    if (cut == 0)
        return {a_prime, Real(0)}; // the whole system already sits below eps/2
    Real m_eps = by_mag[cut - 1].first;
    Real theta(0);
    for (std::size_t i = 0; i < cut; ++i)
        theta += poles[by_mag[i].second].coeff_abs;
    return {a_prime, m_eps + 2 * theta / eps};
}

// ---------------------------------------------------------------------------
// Taylor remainder bound:  for |z - z0| <= r < rho,
//   |F_n(z, h, z0)| <= M(h, z0, rho) / ( rho^{n-1} (rho - r) ).

namespace detail {

inline Real circle_max(const complex_fn& fn, const complex_value& center, const Real& radius,
                       std::size_t samples, bool* failed = nullptr)
{
    Real two_pi = 2 * const_pi();
    Real best(0);
    for (std::size_t j = 0; j < samples; ++j) {
        Real theta = two_pi * Real(static_cast<unsigned long>(j)) / Real(static_cast<unsigned long>(samples));
        Real st, ct;
        sin_cos(theta, st, ct);
        try {
            Real v = abs(fn(center + radius * complex_value(ct, st)));
            if (v > best)
                best = v;
        } catch (const error&) {
            if (failed)
                *failed = true;
        }
    }
    return best;
}

} // namespace detail

struct taylor_check_result {
    Real lhs_max;   // max |F_n| sampled on the r-circle
    Real rhs_bound; // M(h, z0, rho) / (rho^{n-1} (rho - r))
    bool analyticity_warning = false;
};

inline taylor_check_result taylor_remainder_check(const complex_fn& fn, const complex_value& z0, const Real& rho,
                                                  const Real& r, int n, const precision_context& ctx,
                                                  std::size_t samples = 64)
{
    precision_scope scope(ctx);
    if (!(r > 0 && r < rho))
        throw domain_error("taylor_remainder_check: need 0 < r < rho");
    if (n < 1)
        throw domain_error("taylor_remainder_check: n must be >= 1");

    taylor_check_result out;
    // Taylor coefficients h^{(k)}(z0)/k! for k < n
    std::vector<complex_value> coeffs;
    Real deriv_radius = (r + rho) / 2;
    Real fact(1);
    for (int k = 0; k < n; ++k) {
        if (k > 0)
            fact *= k;
        coeffs.push_back(cauchy_derivative(fn, z0, deriv_radius, k, ctx) / fact);
    }

    Real two_pi = 2 * const_pi();
    for (std::size_t j = 0; j < samples; ++j) {
        Real theta = two_pi * Real(static_cast<unsigned long>(j)) / Real(static_cast<unsigned long>(samples));
        Real st, ct;
        sin_cos(theta, st, ct);
        complex_value dz = r * complex_value(ct, st);
        complex_value z = z0 + dz;
        try {
            complex_value taylor(Real(0));
            complex_value zpow(Real(1));
            for (int k = 0; k < n; ++k) {
                taylor += coeffs[k] * zpow;
                zpow *= dz;
            }
            complex_value fn_z = fn(z);
            complex_value rem = (fn_z - taylor) / zpow; // zpow = dz^n after the loop
            Real v = abs(rem);
            if (v > out.lhs_max)
                out.lhs_max = v;
        } catch (const error&) {
            out.analyticity_warning = true;
        }
    }
    bool m_failed = false;
    Real m = detail::circle_max(fn, z0, rho, samples, &m_failed);
    out.analyticity_warning = out.analyticity_warning || m_failed;
    out.rhs_bound = m / (pow(rho, n - 1) * (rho - r));
    return out;
}

// ---------------------------------------------------------------------------
// Claim 1.1 decomposition and the Conditional claim 2.4 bound, in the two
// special cases:
//   (')   B(s) = sin(pi s/4),   A(s) = 2 xi(1/2+s),  z = 4w,       rho = rho' = 3
//   ('')  B(s) = zeta(1/2+s),   A(s) = b(s),         z = i gamma_k, rho = rho' = delta_k'

enum class dc_case { prime, doubleprime };

struct decomposition_result {
    Real residual;  // |lhs - rhs| of Claim 1.1, two-sided evaluation
    Real delta_abs; // |Delta(s, z)|
    Real bound;     // Conditional claim 2.4 right-hand side
    Real err;       // combined numeric error of the two sides
};

inline decomposition_result decomposition_check(const complex_value& s, const complex_value& z, dc_case which,
                                                const zero_cache& cache, const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_fn a_fn, b_fn;
    complex_value b_prime_z;
    Real rho, rho_prime;

    if (which == dc_case::prime) {
        Real w_near = round(z.re / 4);
        if (abs(z - complex_value(4 * w_near)) > pow(Real(10), -ctx.digits) || w_near < 1)
            throw case_error("decomposition_check('): z must be 4w with w >= 1");
        long w = static_cast<long>(w_near);
        a_fn = [&ctx](const complex_value& u) {
            return Real(2) * detail::eval_xi(u + complex_value(Real(1) / 2), ctx.digits);
        };
        b_fn = [](const complex_value& u) { return sin_pi(complex_value(u.re / 4, u.im / 4, u.err / 4)); };
        b_prime_z = complex_value(const_pi() / 4);
        if (w % 2 != 0)
            b_prime_z = -b_prime_z;
        rho = rho_prime = 3;
    } else {
        if (abs(z.re) > pow(Real(10), -ctx.digits) || z.im <= 0)
            throw case_error("decomposition_check(''): z must be i gamma_k");
        std::size_t k = 0;
        for (std::size_t j = 1; j <= cache.count(); ++j)
            if (abs(cache.at(j).gamma - z.im) < Real(1) / 1000) {
                k = j;
                break;
            }
        if (k == 0)
            throw case_error("decomposition_check(''): ordinate not in the cache");
        a_fn = [&ctx](const complex_value& u) { return detail::eval_b(u, ctx.digits); };
        b_fn = [&ctx](const complex_value& u) {
            return detail::zeta_impl(u + complex_value(Real(1) / 2), ctx.digits, false);
        };
        b_prime_z = cache.at(k).zeta_prime;
        rho = rho_prime = cache.at(k).delta_prime;
    }

    Real r = abs(s - z);
    if (!(r > 0 && r < rho))
        throw case_error("decomposition_check: need 0 < |s - z| < rho");

    complex_value a_s = a_fn(s), b_s = b_fn(s), a_z = a_fn(z);
    complex_value one(Real(1));
    complex_value smz = s - z;

    complex_value lhs = one / (a_s * b_s) - one / ((a_z * b_prime_z) * smz);
    complex_value f1 = (one / a_s - one / a_z) / smz;
    complex_value rhs = (one / a_s) * (one / b_s - one / (b_prime_z * smz)) + (one / b_prime_z) * f1;

    decomposition_result out;
    out.residual = abs(lhs - rhs);
    out.delta_abs = abs(lhs);
    out.err = lhs.err + rhs.err;

    Real m_b = detail::circle_max(b_fn, z, rho, 64);
    Real m_inv_a = detail::circle_max([&](const complex_value& u) { return one / a_fn(u); }, z, rho_prime, 64);
    Real quotient = abs(a_s) * abs(b_s) / r; // |A(s) B(s) / (s - z)|
    out.bound = (m_b / (rho * (rho - r) * quotient) + m_inv_a / (rho_prime - r)) / abs(b_prime_z);
    return out;
}

} // namespace zetapfrac
