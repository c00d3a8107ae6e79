#pragma once

#include "zetapfrac/complex.hpp"

#include <functional>
#include <vector>

namespace zetapfrac {

using complex_fn = std::function<complex_value(const complex_value&)>;

namespace detail {

// k-th derivative by the trapezoid rule on a circle of radius r about z0:
//   f^(k)(z0) = k!/(M r^k) sum_j f(z0 + r e^{i th_j}) e^{-i k th_j}
// Exact for Taylor modes below M, so the error decays geometrically in M for
// functions analytic past the circle.
inline complex_value cauchy_circle(const complex_fn& fn, const complex_value& z0, const Real& r, int order,
                                   std::size_t points)
{
    Real two_pi = 2 * const_pi();
    complex_value acc(Real(0));
    for (std::size_t j = 0; j < points; ++j) {
        Real theta = two_pi * Real(static_cast<unsigned long>(j)) / Real(static_cast<unsigned long>(points));
        Real st, ct;
        sin_cos(theta, st, ct);
        complex_value z = z0 + r * complex_value(ct, st);
        Real skt, ckt;
        sin_cos(Real(order) * theta, skt, ckt);
        acc += fn(z) * complex_value(ckt, -skt);
    }
    Real fact(1);
    for (int i = 2; i <= order; ++i)
        fact *= i;
    return acc * (fact / (Real(static_cast<unsigned long>(points)) * pow(r, order)));
}

} // namespace detail

namespace detail {

// Evaluate fn on 2m circle points once; the even-index subset gives the
// m-point trapezoid estimate for the doubling check at no extra evaluations.
inline std::pair<complex_value, complex_value> circle_pair(const complex_fn& fn, const complex_value& z0,
                                                           const Real& r, std::size_t m)
{
    Real two_pi = 2 * const_pi();
    complex_value full(Real(0)), half(Real(0));
    for (std::size_t j = 0; j < 2 * m; ++j) {
        Real theta = two_pi * Real(static_cast<unsigned long>(j)) / Real(static_cast<unsigned long>(2 * m));
        Real st, ct;
        sin_cos(theta, st, ct);
        complex_value term = fn(z0 + r * complex_value(ct, st)) * complex_value(ct, -st);
        full += term;
        if (j % 2 == 0)
            half += term;
    }
    complex_value d_full = full / (Real(static_cast<unsigned long>(2 * m)) * r);
    complex_value d_half = half / (Real(static_cast<unsigned long>(m)) * r);
    return {d_full, d_half};
}

} // namespace detail

// First derivative via Cauchy-circle quadrature with an M vs 2M consistency
// check; the difference feeds the reported error estimate.
inline complex_value complex_derivative(const complex_fn& fn, const complex_value& z, const Real& radius,
                                        const precision_context& ctx)
{
    precision_scope scope(ctx);
    if (radius <= 0)
        throw domain_error("complex_derivative: radius must be positive");
    std::size_t m = 32;
    Real tol = pow(Real(10), 2 - ctx.digits);
    for (int attempt = 0; attempt < 3; ++attempt) {
        auto [d2, d1] = detail::circle_pair(fn, z, radius, m);
        Real diff = abs(d1 - d2);
        if (diff <= tol * (1 + mag_bound(d2))) {
            d2.err += diff + d1.err;
            return d2;
        }
        m *= 4; // rare; integrand nearly stiff at this radius
    }
    throw convergence_error("complex_derivative: circle quadrature not converged at radius " + radius.str(4));
}

// Higher derivatives for the Taylor-remainder checks.
inline complex_value cauchy_derivative(const complex_fn& fn, const complex_value& z, const Real& radius, int order,
                                       const precision_context& ctx, std::size_t points = 128)
{
    precision_scope scope(ctx);
    if (radius <= 0)
        throw domain_error("cauchy_derivative: radius must be positive");
    if (order < 0)
        throw domain_error("cauchy_derivative: order must be nonnegative");
    if (order == 0)
        return fn(z);
    return detail::cauchy_circle(fn, z, radius, order, points);
}

} // namespace zetapfrac
