#pragma once

#include "zetapfrac/precision.hpp"

#include <string>

namespace zetapfrac {

// Extended-precision complex number with an attached absolute error bound.
//
// The bound is heuristic-rigorous: sums propagate sub-additively, products
// and quotients to first order, and every operation adds one unit-roundoff
// term at the working precision.  It is an estimate a test can trust to a
// small constant factor, not a certified enclosure.
struct complex_value {
    Real re{0};
    Real im{0};
    Real err{0};

    complex_value() = default;
    complex_value(Real r) : re(std::move(r)) {}
    complex_value(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    complex_value(Real r, Real i, Real e) : re(std::move(r)), im(std::move(i)), err(std::move(e)) {}
    complex_value(double r) : re(r) {}
    complex_value(int r) : re(r) {}
    complex_value(double r, double i) : re(r), im(i) {}

    bool is_real_zero() const { return re.is_zero() && im.is_zero(); }
};

// Cheap magnitude bound |re| + |im| (within sqrt(2) of |z|); used for error
// accounting where an exact modulus would be wasted work.
inline Real mag_bound(const complex_value& z)
{
    return abs(z.re) + abs(z.im);
}

inline Real abs(const complex_value& z)
{
    if (z.im.is_zero())
        return abs(z.re);
    if (z.re.is_zero())
        return abs(z.im);
    return sqrt(z.re * z.re + z.im * z.im);
}

inline Real arg(const complex_value& z)
{
    return atan2(z.im, z.re);
}

inline complex_value conj(const complex_value& z)
{
    return {z.re, -z.im, z.err};
}

inline complex_value operator-(const complex_value& z)
{
    return {-z.re, -z.im, z.err};
}

inline complex_value operator+(const complex_value& a, const complex_value& b)
{
    complex_value r{a.re + b.re, a.im + b.im};
    r.err = a.err + b.err + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator-(const complex_value& a, const complex_value& b)
{
    complex_value r{a.re - b.re, a.im - b.im};
    r.err = a.err + b.err + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator*(const complex_value& a, const complex_value& b)
{
    complex_value r{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    r.err = a.err * mag_bound(b) + b.err * mag_bound(a) + a.err * b.err + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator*(const Real& a, const complex_value& b)
{
    complex_value r{a * b.re, a * b.im};
    r.err = b.err * abs(a) + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator*(const complex_value& a, const Real& b)
{
    return b * a;
}

inline complex_value operator/(const complex_value& a, const complex_value& b)
{
    Real nb = b.re * b.re + b.im * b.im;
    if (nb.is_zero())
        throw domain_error("complex division by zero");
    complex_value r{(a.re * b.re + a.im * b.im) / nb, (a.im * b.re - a.re * b.im) / nb};
    Real mb = mag_bound(b);
    Real rel = b.err / mb; // first-order; mb > 0 here
    if (a.err.is_zero() && b.err.is_zero())
        r.err = mag_bound(r) * work_eps();
    else
        r.err = a.err / mb + mag_bound(r) * rel + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator/(const complex_value& a, const Real& b)
{
    if (b.is_zero())
        throw domain_error("complex division by zero");
    complex_value r{a.re / b, a.im / b};
    r.err = a.err / abs(b) + mag_bound(r) * work_eps();
    return r;
}

inline complex_value operator/(const Real& a, const complex_value& b)
{
    return complex_value(a) / b;
}

inline complex_value& operator+=(complex_value& a, const complex_value& b)
{
    a = a + b;
    return a;
}
inline complex_value& operator-=(complex_value& a, const complex_value& b)
{
    a = a - b;
    return a;
}
inline complex_value& operator*=(complex_value& a, const complex_value& b)
{
    a = a * b;
    return a;
}

inline complex_value exp(const complex_value& z)
{
    Real ex = exp(z.re), s, c;
    sin_cos(z.im, s, c);
    complex_value r{ex * c, ex * s};
    r.err = mag_bound(r) * (z.err + work_eps()) + ex * z.err;
    return r;
}

// Principal branch.
inline complex_value log(const complex_value& z)
{
    Real m = abs(z);
    if (m.is_zero())
        throw domain_error("log of zero");
    complex_value r{log(m), atan2(z.im, z.re)};
    r.err = z.err / m + (1 + mag_bound(r)) * work_eps();
    return r;
}

inline complex_value sin(const complex_value& z)
{
    Real s, c;
    sin_cos(z.re, s, c);
    Real ch = cosh(z.im), sh = sinh(z.im);
    complex_value r{s * ch, c * sh};
    r.err = ch * (z.err + work_eps()) + mag_bound(r) * work_eps();
    return r;
}

inline complex_value cos(const complex_value& z)
{
    Real s, c;
    sin_cos(z.re, s, c);
    Real ch = cosh(z.im), sh = sinh(z.im);
    complex_value r{c * ch, -s * sh};
    r.err = ch * (z.err + work_eps()) + mag_bound(r) * work_eps();
    return r;
}

// sin(pi z) with the integer part of Re(z) reduced exactly before pi enters.
// This makes sin_pi exact at integers (sin_pi(4w/4...) etc.), which the pole
// bookkeeping downstream relies on.
inline complex_value sin_pi(const complex_value& z)
{
    Real n = round(z.re);       // exact
    Real fr = z.re - n;         // exact; |fr| <= 1/2
    bool flip = !n.is_zero() && !mpfr_integer_p(Real(n / 2).backend().data());
    complex_value red{fr, z.im, z.err};
    complex_value s = sin(const_pi() * red);
    if (flip)
        s = -s;
    return s;
}

inline complex_value cos_pi(const complex_value& z)
{
    Real n = round(z.re);
    Real fr = z.re - n;
    bool flip = !n.is_zero() && !mpfr_integer_p(Real(n / 2).backend().data());
    complex_value red{fr, z.im, z.err};
    complex_value c = cos(const_pi() * red);
    if (flip)
        c = -c;
    return c;
}

// base^z for positive real base, principal branch.
inline complex_value pow_real_base(const Real& base, const complex_value& z)
{
    if (base <= 0)
        throw domain_error("pow_real_base needs a positive base");
    Real lb = log(base);
    return exp(complex_value{z.re * lb, z.im * lb, z.err * lb});
}

// z^w, principal branch of log.
inline complex_value pow(const complex_value& z, const complex_value& w)
{
    return exp(w * log(z));
}

inline complex_value sqrt(const complex_value& z)
{
    if (z.im.is_zero() && z.re >= 0) {
        complex_value r{sqrt(z.re), Real(0)};
        r.err = (z.re.is_zero() ? sqrt(z.err) : z.err / (2 * r.re)) + r.re * work_eps();
        return r;
    }
    return pow(z, complex_value(Real(1) / 2));
}

inline bool close_to(const complex_value& a, const complex_value& b, const Real& tol)
{
    return abs(a - b) <= tol;
}

inline std::string to_string(const complex_value& z, int digits = 10)
{
    std::string s = z.re.str(digits);
    std::string t = z.im.str(digits);
    if (!t.empty() && t[0] != '-')
        t = "+" + t;
    return s + t + "i";
}

} // namespace zetapfrac
