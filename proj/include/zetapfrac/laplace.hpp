#pragma once

#include "zetapfrac/coefficients.hpp"
#include "zetapfrac/partial_fraction.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace zetapfrac {

struct density_config {
    std::size_t n_zeros = 100; // N in lambda(y)
    Real y_min{-40};
    Real y_max{16};
    int quad_points = 8;        // Gauss-Legendre nodes per panel
    Real window_tol{Real(1) / 1000000}; // cap on the analytic window-tail bound

    void validate() const
    {
        if (!(y_min < 0 && y_max > 0))
            throw config_error("density_config: need y_min < 0 < y_max");
        if (quad_points < 2 || quad_points > 32)
            throw config_error("density_config: quad_points must lie in [2, 32]");
        if (n_zeros < 1)
            throw config_error("density_config: n_zeros must be positive");
    }
};

// lambda(y) = 2 sum_{k<=N} c(i gamma_k) cos(gamma_k y); the tail estimate is
// the pointwise bound 2 sum_{k>N} |c_k| from the fitted decay.
inline real_with_err lambda_eval(const Real& y, std::size_t n, const zero_cache& cache, const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (n > cache.count() || n == 0)
        throw index_error("lambda_eval: cutoff outside the cache");
    Real acc(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const zero_record& r = cache.at(k);
        if (!r.has_c)
            throw insufficient_data_error("lambda_eval: c_imag column not filled");
        acc += r.c_imag * cos(r.gamma * y);
    }
    decay_fit fit = fit_c_decay(cache, ctx);
    return {2 * acc, 2 * detail::fitted_tail(fit, cache.at(n).gamma, Real(0), 0)};
}

// g_0(y): P_0(pi e^{-2y}) on the right branch; lambda(y) + c(0) - P_0(pi e^{2y})
// on the left.  y = 0 is excluded; the branches are defined separately.
inline real_with_err g0_eval(const Real& y, const density_config& config, const zero_cache& cache,
                             const precision_context& ctx)
{
    precision_scope scope(ctx);
    config.validate();
    if (y.is_zero())
        throw domain_error("g0_eval: y = 0 is outside both branches");
    if (y > 0) {
        complex_value p0 = p0_eval(complex_value(const_pi() * exp(-2 * y)), ctx);
        return {p0.re, p0.err};
    }
    real_with_err lam = lambda_eval(y, config.n_zeros, cache, ctx);
    complex_value p0 = p0_eval(complex_value(const_pi() * exp(2 * y)), ctx);
    return {lam.value + c_at(real_pole{0}, ctx) - p0.re, lam.err + p0.err};
}

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace detail

// Composite Gauss-Legendre quadrature of e^{sy} g_0(y) over [y_min, y_max].
// Panels auto-shrink to min(0.25, 1/gamma_N) so the lambda oscillation is
// resolved; g_0 at the nodes is s-independent and computed once, so a table
// serves any number of evaluation points.  Node sums run in hardware doubles:
// the quadrature floor (~1e-12) sits far below the lambda-truncation budget,
// which dominates every reported residual.
class laplace_quadrature {
public:
    laplace_quadrature(const density_config& config, const zero_cache& cache, const precision_context& ctx)
        : config_(config)
    {
        precision_scope scope(ctx);
        config_.validate();
        if (config_.n_zeros > cache.count())
            throw index_error("laplace_quadrature: n_zeros outside the cache");

        const double y_min = static_cast<double>(config_.y_min);
        const double y_max = static_cast<double>(config_.y_max);
        const double gamma_n = static_cast<double>(cache.at(config_.n_zeros).gamma);
        const double width = std::min(0.25, 1.0 / gamma_n);

        std::vector<double> gl_x, gl_w;
        detail::gauss_legendre(config_.quad_points, gl_x, gl_w);

        std::vector<double> gammas(config_.n_zeros), coeffs(config_.n_zeros);
        for (std::size_t k = 0; k < config_.n_zeros; ++k) {
            gammas[k] = static_cast<double>(cache.at(k + 1).gamma);
            coeffs[k] = static_cast<double>(cache.at(k + 1).c_imag);
        }
        const double c0 = static_cast<double>(c_at(real_pole{0}, ctx));
        std::vector<double> ctil(32);
        for (unsigned k = 1; k < 32; ++k)
            ctil[k] = static_cast<double>(c_tilde(k, ctx));
        auto p0_dbl = [&](double z) {
            double mz2 = -z * z, term = 1.0, acc = 0.0;
            for (unsigned k = 1; k < 32; ++k) {
                term *= mz2;
                double t = ctil[k] * term;
                acc -= t;
                if (std::abs(t) < 1e-18)
                    break;
            }
            return acc;
        };

        // left branch: oscillatory; panel width resolves gamma_N
        auto add_panels = [&](double lo, double hi, double w, bool left) {
            long n_panels = static_cast<long>(std::ceil((hi - lo) / w));
            double h = (hi - lo) / n_panels;
            for (long p = 0; p < n_panels; ++p) {
                double a = lo + p * h, b = a + h;
                for (int j = 0; j < config_.quad_points; ++j) {
                    double y = 0.5 * (a + b) + 0.5 * h * gl_x[j];
                    double g;
                    if (left) {
                        double lam = 0.0;
                        for (std::size_t k = 0; k < gammas.size(); ++k)
                            lam += coeffs[k] * std::cos(gammas[k] * y);
                        g = 2.0 * lam + c0 - p0_dbl(3.14159265358979323846 * std::exp(2.0 * y));
                    } else {
                        g = p0_dbl(3.14159265358979323846 * std::exp(-2.0 * y));
                    }
                    nodes_.push_back(y);
                    g0_weights_.push_back(g * 0.5 * h * gl_w[j]);
                }
            }
        };
        add_panels(y_min, 0.0, width, true);
        add_panels(0.0, y_max, 0.25, false);
    }

    // integral of e^{sy} g_0(y) over the window
    complex_value integrate(const complex_value& s) const
    {
        const double x = static_cast<double>(s.re), t = static_cast<double>(s.im);
        std::complex<double> acc(0.0, 0.0), comp(0.0, 0.0);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            double e = std::exp(x * nodes_[i]);
            double ph = t * nodes_[i];
            std::complex<double> term(e * std::cos(ph) * g0_weights_[i], e * std::sin(ph) * g0_weights_[i]);
            // Kahan step keeps the long sum honest
            std::complex<double> yk = term - comp;
            std::complex<double> tk = acc + yk;
            comp = (tk - acc) - yk;
            acc = tk;
        }
        complex_value out{Real(acc.real()), Real(acc.imag())};
        out.err = Real(nodes_.size()) * Real(1e-17) * (abs(out) + 1);
        return out;
    }

    std::size_t node_count() const { return nodes_.size(); }
    const density_config& config() const { return config_; }

private:
    density_config config_;
    std::vector<double> nodes_;
    std::vector<double> g0_weights_;
};

struct transform_result {
    complex_value integral;
    complex_value f_value;
    Real residual;
    Real budget; // lambda truncation + window tails + quadrature floor
};

struct transform_budget_parts {
    Real lambda_tail;   // omitted lambda terms integrated over the left branch
    Real window_right;  // |integral beyond y_max|, g_0 = O(e^{-4y}) there
    Real window_left;   // |integral below y_min|, g_0 = O(1) there
    Real quad_floor;    // double-precision node-sum floor

    Real total() const { return lambda_tail + window_right + window_left + quad_floor; }
};

namespace detail {

inline transform_budget_parts transform_budget(const complex_value& s, const density_config& config,
                                               const zero_cache& cache, const precision_context& ctx,
                                               const Real& quad_err)
{
    decay_fit fit = fit_c_decay(cache, ctx);
    Real x = s.re;
    transform_budget_parts parts;
    Real lam_tail = 2 * fitted_tail(fit, cache.at(config.n_zeros).gamma, Real(0), 0);
    parts.lambda_tail = lam_tail * (1 - exp(x * config.y_min)) / x;
    Real c_right = c_tilde(1, ctx) * const_pi() * const_pi() * (Real(11) / 10);
    parts.window_right = c_right * exp((x - 4) * config.y_max) / (4 - x);
    series_constants_result sc = series_constants(cache, config.n_zeros, ctx);
    Real g_left_sup = sc.a_partial + sc.a_tail + abs(c_at(real_pole{0}, ctx)) + Real(1) / 10;
    parts.window_left = g_left_sup * exp(x * config.y_min) / x;
    parts.quad_floor = quad_err;
    return parts;
}

} // namespace detail

// Conditional theorem 5.2 at desk scale: f(s) vs the windowed transform of
// g_0 on the strip V(0, 4).
inline transform_result transform_residual(const complex_value& s, const density_config& config,
                                           const zero_cache& cache, const precision_context& ctx,
                                           const laplace_quadrature* prebuilt = nullptr)
{
    precision_scope scope(ctx);
    config.validate();
    if (!(s.re > 0 && s.re < 4))
        throw domain_error("transform_residual: s must lie in V(0, 4)");

    transform_result out;
    if (prebuilt) {
        out.integral = prebuilt->integrate(s);
    } else {
        laplace_quadrature quad(config, cache, ctx);
        out.integral = quad.integrate(s);
    }
    out.f_value = eval_block(block_name::f, s, ctx);
    out.residual = abs(out.integral - out.f_value);
    transform_budget_parts parts = detail::transform_budget(s, config, cache, ctx, out.integral.err);
    out.budget = parts.total();
    Real window_part = parts.window_left + parts.window_right;
    if (window_part > config.window_tol)
        throw window_error("transform_residual: window tails " + window_part.str(4) + " exceed the tolerance " +
                           config.window_tol.str(4));
    return out;
}

} // namespace zetapfrac
