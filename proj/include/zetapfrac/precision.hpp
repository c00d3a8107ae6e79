#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "zetapfrac/errors.hpp"

namespace zetapfrac {

// All real arithmetic runs on MPFR through Boost.Multiprecision.  The
// variable-precision backend lets --digits be a runtime knob; expression
// templates are off so values behave like ordinary numbers.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Requested output precision plus a safety cap for series evaluation.
//
// Operations run internally at working_digits() (roughly twice the requested
// digits): the extra guard digits absorb cancellation in the xi/zeta kernels
// so that reported results genuinely carry `digits` correct figures even when
// intermediates reach 1e16 and beyond.
struct precision_context {
    int digits = 30;
    long max_series_terms = 100000;

    int working_digits() const { return 2 * digits + 10; }

    void validate() const
    {
        if (digits < 15)
            throw config_error("precision_context: digits must be >= 15, got " + std::to_string(digits));
        if (max_series_terms < 100)
            throw config_error("precision_context: max_series_terms must be >= 100");
    }

    static precision_context with_digits(int d)
    {
        precision_context ctx;
        ctx.digits = d;
        ctx.validate();
        return ctx;
    }
};

// Sets the thread's default MPFR precision for the lifetime of the scope.
// Every public operation opens one of these, so callers never have to touch
// Real::default_precision themselves.
class precision_scope {
public:
    explicit precision_scope(const precision_context& ctx) : saved_(Real::default_precision())
    {
        Real::default_precision(static_cast<unsigned>(ctx.working_digits()));
    }
    explicit precision_scope(int working_digits) : saved_(Real::default_precision())
    {
        Real::default_precision(static_cast<unsigned>(working_digits));
    }
    ~precision_scope() { Real::default_precision(saved_); }

    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

// Unit roundoff"ish" quantity at the current working precision: 10^(1-digits).
inline Real work_eps()
{
    return pow(Real(10), 1 - static_cast<int>(Real::default_precision()));
}

namespace detail {

// Small cache of constants per working precision.  Guarded by a mutex; the
// per-call cost is a map lookup, which is negligible next to any MPFR op.
struct constant_cache {
    std::mutex mu;
    std::map<unsigned, Real> pi, ln2pi, ln_pi;
    std::map<unsigned, std::vector<Real>> ln_n; // ln(1), ln(2), ... per precision
};

inline constant_cache& constants()
{
    static constant_cache c;
    return c;
}

} // namespace detail

inline Real const_pi()
{
    auto& c = detail::constants();
    unsigned p = Real::default_precision();
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.pi.find(p);
    if (it == c.pi.end())
        it = c.pi.emplace(p, Real(4) * atan(Real(1))).first;
    return it->second;
}

inline Real const_ln_pi()
{
    auto& c = detail::constants();
    unsigned p = Real::default_precision();
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.ln_pi.find(p);
    if (it == c.ln_pi.end())
        it = c.ln_pi.emplace(p, log(Real(4) * atan(Real(1)))).first;
    return it->second;
}

inline Real const_ln_2pi()
{
    auto& c = detail::constants();
    unsigned p = Real::default_precision();
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.ln2pi.find(p);
    if (it == c.ln2pi.end())
        it = c.ln2pi.emplace(p, log(Real(8) * atan(Real(1)))).first;
    return it->second;
}

// ln(n) for the Euler-Maclaurin main sum; hit once per term, so cached.
inline Real cached_ln(unsigned long n)
{
    auto& c = detail::constants();
    unsigned p = Real::default_precision();
    std::lock_guard<std::mutex> lk(c.mu);
    auto& v = c.ln_n[p];
    if (v.empty())
        v.push_back(Real(0)); // ln(1); index 0 unused
    while (v.size() < n)
        v.push_back(log(Real(static_cast<unsigned long>(v.size() + 1))));
    return v[n - 1];
}

// sin and cos in one MPFR call; boost does not expose the pair.
inline void sin_cos(const Real& x, Real& s, Real& c)
{
    s = Real(0);
    c = Real(0);
    mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
}

// Deterministic parallel map: fn(i) for i in [0, n), results kept in index
// order so downstream reductions are reproducible regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0)
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (max_threads)
        hw = std::min(hw, max_threads);
    if (hw <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    unsigned prec = Real::default_precision();
    std::vector<std::thread> pool;
    std::size_t chunk = (n + hw - 1) / hw;
    for (unsigned t = 0; t < hw; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&, lo, hi, prec] {
            Real::default_precision(prec);
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

// Decimal digits for a lossless round-trip at the current default precision.
// The backend allocates ceil(digits10 * log2(10)) + guard bits, so digits10
// plus a small margin of extra decimal digits reads back bit-exactly.
inline int roundtrip_digits()
{
    return static_cast<int>(Real::default_precision()) + 6;
}

inline std::string to_decimal_string(const Real& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

} // namespace zetapfrac
