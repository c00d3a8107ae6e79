#pragma once

#include "zetapfrac/zero_table.hpp"

#include <vector>

namespace zetapfrac {

// The contour T_*(alpha): the imaginary axis detouring around each zero
// i gamma_k along a right semicircle of radius alpha delta_k'.

// s(t, alpha) = x(t, alpha) + it for t above t(1) = gamma_1 - alpha delta_1'.
inline complex_value contour_point(const Real& t, const Real& alpha, const zero_cache& cache)
{
    if (!(alpha > 0 && alpha < Real(1) / 2))
        throw domain_error("contour_point: alpha must lie in (0, 1/2)");
    const Real t1 = cache.at(1).gamma - alpha * cache.at(1).delta_prime;
    if (!(t > t1))
        throw domain_error("contour_point: t must exceed t(1)");
    const zero_record& last = cache.at(cache.count());
    if (t > last.gamma + alpha * last.delta_prime)
        throw domain_error("contour_point: t above the cached table");

    // nearest ordinate
    std::size_t lo = 1, hi = cache.count();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cache.at(mid).gamma < t)
            lo = mid + 1;
        else
            hi = mid;
    }
    for (std::size_t k : {lo > 1 ? lo - 1 : lo, lo}) {
        const zero_record& r = cache.at(k);
        Real radius = alpha * r.delta_prime;
        Real dt = t - r.gamma;
        if (abs(dt) <= radius)
            return {sqrt(radius * radius - dt * dt), t};
    }
    return {Real(0), t};
}

// j_k(alpha) = min over |t - gamma_k| <= alpha delta_k' of
// |zeta(1/2 + it)/(t - gamma_k)|, the quotient read as |zeta'| at the center.
// Grid of 201 points, then golden-section refinement around the best cell.
inline Real j_k_eval(std::size_t k, const Real& alpha, const zero_cache& cache, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (!(alpha > 0 && alpha < Real(1) / 2))
        throw domain_error("j_k_eval: alpha must lie in (0, 1/2)");
    const zero_record& rec = cache.at(k);
    const Real radius = alpha * rec.delta_prime;
    const Real center_value = abs(rec.zeta_prime);

    auto quotient = [&](const Real& t) -> Real {
        Real dt = t - rec.gamma;
        if (abs(dt) < pow(Real(10), -(ctx.working_digits() / 2)))
            return center_value;
        return abs(detail::zeta_impl(complex_value(Real(1) / 2, t), ctx.digits, false)) / abs(dt);
    };

    const int n = 201;
    Real best = center_value;
    int best_i = n / 2;
    for (int i = 0; i < n; ++i) {
        Real t = rec.gamma - radius + 2 * radius * i / (n - 1);
        Real q = quotient(t);
        if (q < best) {
            best = q;
            best_i = i;
        }
    }
    // golden-section refinement on the bracketing cells
    Real a = rec.gamma - radius + 2 * radius * std::max(0, best_i - 1) / (n - 1);
    Real b = rec.gamma - radius + 2 * radius * std::min(n - 1, best_i + 1) / (n - 1);
    const Real gr = (sqrt(Real(5)) - 1) / 2;
    Real c = b - gr * (b - a), d = a + gr * (b - a);
    Real fc = quotient(c), fd = quotient(d);
    for (int it = 0; it < 40; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = quotient(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = quotient(d);
        }
    }
    Real refined = fc < fd ? fc : fd;
    return refined < best ? refined : best;
}

struct exponent_estimate {
    Real value;
    Real std_err;
};

struct conjecture_verdict {
    bool holds = false;
    Real margin; // threshold minus the estimate; positive means "holds"
};

struct audit_report {
    Real alpha;
    std::size_t n_zeros = 0;
    exponent_estimate eps0, eps1, eps2, eps1_tilde;
    conjecture_verdict c1_ii;   // eps0 < 3/4
    conjecture_verdict c_prime; // eps0 < 7/4
    conjecture_verdict c3_ii;   // eps1 + eps2 < 3/4
    conjecture_verdict c4_ii;   // eps1_tilde + eps2 <= 1
};

namespace detail {

// Lower-envelope log-log fit: bin by abscissa, keep each bin's minimum, and
// run least squares through the bin minima.  Decay exponents are asymptotic
// claims, so the caller restricts the sample to the upper index range first.
inline exponent_estimate envelope_exponent(const std::vector<std::pair<Real, Real>>& pts, int bins = 8)
{
    if (pts.size() < 4)
        throw insufficient_data_error("envelope_exponent: too few points");
    Real x_lo = pts.front().first, x_hi = pts.front().first;
    for (const auto& p : pts) {
        if (p.first < x_lo)
            x_lo = p.first;
        if (p.first > x_hi)
            x_hi = p.first;
    }
    std::vector<std::pair<Real, Real>> mins;
    for (int b = 0; b < bins; ++b) {
        Real lo = x_lo + (x_hi - x_lo) * b / bins;
        Real hi = x_lo + (x_hi - x_lo) * (b + 1) / bins;
        bool have = false;
        std::pair<Real, Real> best;
        for (const auto& p : pts) {
            bool inside = b + 1 == bins ? (p.first >= lo && p.first <= hi) : (p.first >= lo && p.first < hi);
            if (inside && (!have || p.second < best.second)) {
                best = p;
                have = true;
            }
        }
        if (have)
            mins.push_back(best);
    }
    if (mins.size() < 3)
        throw insufficient_data_error("envelope_exponent: degenerate binning");
    Real m(static_cast<unsigned long>(mins.size())), sx(0), sy(0), sxx(0), sxy(0);
    for (const auto& p : mins) {
        sx += p.first;
        sy += p.second;
        sxx += p.first * p.first;
        sxy += p.first * p.second;
    }
    Real denom = m * sxx - sx * sx;
    Real slope = (m * sxy - sx * sy) / denom;
    Real inter = (sy - slope * sx) / m;
    Real ss(0);
    for (const auto& p : mins) {
        Real r = p.second - (inter + slope * p.first);
        ss += r * r;
    }
    Real se = sqrt(ss / (m - 2) / (sxx - sx * sx / m));
    // the conjectures ask for decay exponents; growth clips to zero
    Real eps = slope < 0 ? -slope : Real(0);
    return {eps, se};
}

} // namespace detail

// Regression estimates of the conjecture exponents over the top half of the
// table, with informational verdict margins.  Verdicts report comparisons,
// never truth: C1-C4 are open.
inline audit_report exponent_estimates(std::size_t n, const Real& alpha, const zero_cache& cache,
                                       const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (n < 50)
        throw insufficient_data_error("exponent_estimates: need at least 50 zeros");
    if (n > cache.count())
        throw index_error("exponent_estimates: cutoff beyond the cache");

    audit_report rep;
    rep.alpha = alpha;
    rep.n_zeros = n;

    std::vector<std::pair<Real, Real>> zp_pts, gap_pts, jk_pts, m_pts;
    std::size_t lo = n / 2;
    for (std::size_t k = lo; k <= n; ++k) {
        const zero_record& r = cache.at(k);
        Real lg = log(r.gamma);
        zp_pts.emplace_back(lg, log(abs(r.zeta_prime)));
        gap_pts.emplace_back(lg, log(r.delta));
        jk_pts.emplace_back(lg, log(j_k_eval(k, alpha, cache, ctx)));
    }
    // eps0: per-gap minima of |zeta(1/2 + s(t, alpha))| along the contour
    for (std::size_t k = lo; k + 1 <= n; ++k) {
        const zero_record& a = cache.at(k);
        const zero_record& b = cache.at(k + 1);
        Real span_lo = a.gamma, span_hi = b.gamma;
        Real best;
        bool have = false;
        const int samples = 20;
        for (int i = 0; i <= samples; ++i) {
            Real t = span_lo + (span_hi - span_lo) * i / samples;
            complex_value s = contour_point(t, alpha, cache);
            Real v = abs(detail::zeta_impl(complex_value(Real(1) / 2) + s, ctx.digits, false));
            if (!have || v < best) {
                best = v;
                have = true;
            }
        }
        m_pts.emplace_back(log((span_lo + span_hi) / 2), log(best));
    }

    rep.eps1 = detail::envelope_exponent(zp_pts);
    rep.eps2 = detail::envelope_exponent(gap_pts);
    rep.eps1_tilde = detail::envelope_exponent(jk_pts);
    rep.eps0 = detail::envelope_exponent(m_pts);

    auto verdict = [](const Real& value, const Real& threshold) {
        conjecture_verdict v;
        v.margin = threshold - value;
        v.holds = v.margin > 0;
        return v;
    };
    rep.c1_ii = verdict(rep.eps0.value, Real(3) / 4);
    rep.c_prime = verdict(rep.eps0.value, Real(7) / 4);
    rep.c3_ii = verdict(rep.eps1.value + rep.eps2.value, Real(3) / 4);
    rep.c4_ii = verdict(rep.eps1_tilde.value + rep.eps2.value, Real(1));
    // C4(ii) is a non-strict inequality
    if (!rep.c4_ii.holds && rep.c4_ii.margin.is_zero())
        rep.c4_ii.holds = true;
    return rep;
}

} // namespace zetapfrac
