#pragma once

#include "zetapfrac/zeta.hpp"

namespace zetapfrac {

// The six building-block functions:
//   l(s)  = pi^{-s/2} s G(s/2) = pi^{-s/2} 2 G(1+s/2)
//   a(s)  = l(s) (s-1)
//   xi(s) = (1/2) a(s) zeta(s)
//   b(s)  = sin(pi s/4) a(1/2+s)
//   n(s)  = sin(pi s/4) 2 xi(1/2+s)
//   f(s)  = 1/n(s)
enum class block_name { l, a, b, xi, n, f };

struct strip {
    Real x0;
    Real x1;
    bool closed = false;

    strip(Real lo, Real hi, bool cl = false) : x0(std::move(lo)), x1(std::move(hi)), closed(cl)
    {
        if (!(x0 < x1))
            throw domain_error("strip: x0 < x1 required");
    }

    bool contains(const complex_value& s) const
    {
        return closed ? (s.re >= x0 && s.re <= x1) : (s.re > x0 && s.re < x1);
    }
};

struct real_with_err {
    Real value;
    Real err;
};

namespace detail {

inline complex_value eval_l(const complex_value& s, int digits)
{
    complex_value half_s(s.re / 2, s.im / 2, s.err / 2);
    return pow_real_base(const_pi(), -half_s) * (Real(2) * gamma_impl(complex_value(Real(1)) + half_s, digits));
}

// xi(s), entire.  The zeta pole at s = 1 is always folded into the product
// (s-1) zeta(s), so there is no special-casing near 1.  For Re(s) < 0 the
// direct form hits Gamma poles against zeta's trivial zeros; the reflected
// closed form below (reflection formula combined with Legendre duplication)
// is analytic there:
//   xi(s) = (s/2)(s-1) pi^{s/2} 2^s G(1-s) zeta(1-s) / G(1-s/2),  Re(s) < 0.
inline complex_value eval_xi(const complex_value& s, int digits)
{
    if (s.re >= 0) {
        complex_value w = zeta_em(s, /*fold_pole=*/true);
        return Real(1) / 2 * (eval_l(s, digits) * w);
    }
    complex_value one_minus(Real(1) - s.re, -s.im, s.err);
    complex_value num = (s * (s - complex_value(Real(1)))) * pow_real_base(const_pi(), complex_value(s.re / 2, s.im / 2)) *
                        pow_real_base(Real(2), s) * gamma_impl(one_minus, digits) * zeta_em(one_minus, false);
    return num / (Real(2) * gamma_impl(complex_value(Real(1) - s.re / 2, -s.im / 2), digits));
}

inline complex_value eval_n(const complex_value& s, int digits)
{
    complex_value quarter(s.re / 4, s.im / 4, s.err / 4);
    complex_value half_plus(s.re + Real(1) / 2, s.im, s.err);
    return sin_pi(quarter) * (Real(2) * eval_xi(half_plus, digits));
}

inline complex_value eval_b(const complex_value& s, int digits)
{
    complex_value quarter(s.re / 4, s.im / 4, s.err / 4);
    complex_value half_plus(s.re + Real(1) / 2, s.im, s.err);
    complex_value a = eval_l(half_plus, digits) * (half_plus - complex_value(Real(1)));
    return sin_pi(quarter) * a;
}

} // namespace detail

inline complex_value eval_block(block_name name, const complex_value& s, const precision_context& ctx)
{
    precision_scope scope(ctx);
    switch (name) {
    case block_name::l:
        return detail::eval_l(s, ctx.digits);
    case block_name::a:
        return detail::eval_l(s, ctx.digits) * (s - complex_value(Real(1)));
    case block_name::b:
        return detail::eval_b(s, ctx.digits);
    case block_name::xi:
        return detail::eval_xi(s, ctx.digits);
    case block_name::n:
        return detail::eval_n(s, ctx.digits);
    case block_name::f: {
        complex_value n = detail::eval_n(s, ctx.digits);
        if (abs(n) < pow(Real(10), -Real(ctx.digits) / 2))
            throw pole_error("f(s): n(s) below the noise floor near " + to_string(s, 8));
        return complex_value(Real(1)) / n;
    }
    }
    throw domain_error("eval_block: unknown block");
}

// |xi(1/2 - s) - xi(1/2 + s)|; an exact identity, so the result is pure
// accumulated roundoff and must sit inside the two error estimates.
inline Real xi_symmetry_residual(const complex_value& s, const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_value lhs = detail::eval_xi(complex_value(Real(1) / 2 - s.re, -s.im, s.err), ctx.digits);
    complex_value rhs = detail::eval_xi(complex_value(Real(1) / 2 + s.re, s.im, s.err), ctx.digits);
    return abs(lhs - rhs);
}

// Xi(t) = xi(1/2 + it), real for real t.
inline real_with_err big_xi(const Real& t, const precision_context& ctx)
{
    precision_scope scope(ctx);
    complex_value v = detail::eval_xi(complex_value(Real(1) / 2, t), ctx.digits);
    Real bound = v.err + abs(v.re) * work_eps();
    if (abs(v.im) > 10 * bound)
        throw assertion_error("big_xi: imaginary part " + v.im.str(3) + " exceeds 10x error estimate at t = " + t.str(8));
    return {v.re, bound + abs(v.im)};
}

// The unique root of zeta(sigma) = 2 on (1, oo); brackets then bisects.
inline Real sigma0(const precision_context& ctx)
{
    precision_scope scope(ctx);
    Real lo(Real(105) / 100), hi(2);
    // zeta(1.05) > 2 > zeta(2); bisect to the context tolerance
    Real flo = real_zeta(lo, ctx) - 2;
    Real tol = pow(Real(10), -(ctx.digits + 3));
    while (hi - lo > tol) {
        Real mid = (lo + hi) / 2;
        Real fm = real_zeta(mid, ctx) - 2;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

// m(r, delta) = sup of 1/(2|xi(1/2+s)|) over Re(s) >= r, |Im(s)| <= delta,
// realized as a grid sup near the Re(s) = r edge (1/|xi| decays in Re, so the
// sup sits on the edge).
inline Real m_sup(const Real& r, const Real& delta, const precision_context& ctx, int nx = 9, int ny = 9)
{
    precision_scope scope(ctx);
    Real best(0);
    for (int i = 0; i < nx; ++i) {
        Real x = r + Real(4) * i / (nx - 1);
        for (int j = 0; j < ny; ++j) {
            Real y = -delta + 2 * delta * j / (ny - 1);
            complex_value xi = detail::eval_xi(complex_value(Real(1) / 2 + x, y), ctx.digits);
            Real v = 1 / (2 * abs(xi));
            if (v > best)
                best = v;
        }
    }
    return best;
}

} // namespace zetapfrac
