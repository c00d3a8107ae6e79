#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <mutex>
#include <vector>

#include "zetapfrac/precision.hpp"

namespace zetapfrac {

namespace detail {

using rational = boost::multiprecision::mpq_rational;
using bigint = boost::multiprecision::mpz_int;

// Bernoulli numbers B_{2k} computed exactly over rationals from the defining
// recurrence sum_{j<=m} C(m+1, j) B_j = 0.  Exact arithmetic sidesteps the
// cancellation this recurrence suffers in floating point, and the rational
// values are precision-independent, so one exact table serves every context.
// Rounded Real images (and B_{2k}/(2k)! for Euler-Maclaurin) are cached per
// working precision.
class bernoulli_table {
public:
    Real b2_real(std::size_t k)
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto& v = real_[Real::default_precision()];
        fill(v, k);
        return v[k].first;
    }

    Real b2_over_fact(std::size_t k)
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto& v = real_[Real::default_precision()];
        fill(v, k);
        return v[k].second;
    }

private:
    void fill(std::vector<std::pair<Real, Real>>& v, std::size_t k)
    {
        while (even_.size() <= k)
            extend();
        while (over_fact_.size() <= k) {
            std::size_t j = over_fact_.size();
            if (j > 0)
                fact_ *= bigint(2 * j - 1) * bigint(2 * j); // (2j)!
            over_fact_.push_back(even_[j] / rational(fact_));
        }
        while (v.size() <= k) {
            std::size_t j = v.size();
            Real b, bf;
            mpfr_set_q(b.backend().data(), even_[j].backend().data(), MPFR_RNDN);
            mpfr_set_q(bf.backend().data(), over_fact_[j].backend().data(), MPFR_RNDN);
            v.emplace_back(b, bf);
        }
    }

    void extend()
    {
        if (even_.empty()) {
            even_.emplace_back(1); // B_0
            return;
        }
        const std::size_t m = 2 * even_.size();
        rational acc(0);
        bigint binom(m + 1); // C(m+1, 1)
        std::size_t jj = 1;
        acc += even_[0];
        acc -= rational(binom) / 2; // B_1 = -1/2
        for (std::size_t j = 2; j + 2 <= m; j += 2) {
            while (jj < j) {
                binom = binom * bigint(m + 1 - jj) / bigint(jj + 1);
                ++jj;
            }
            acc += rational(binom) * even_[j / 2];
        }
        even_.push_back(-acc / rational(m + 1));
    }

    std::mutex mu_;
    std::vector<rational> even_;
    std::vector<rational> over_fact_;
    bigint fact_{1};
    std::map<unsigned, std::vector<std::pair<Real, Real>>> real_;
};

inline bernoulli_table& bernoulli()
{
    static bernoulli_table t;
    return t;
}

} // namespace detail

// B_{2k} at the current working precision.
inline Real bernoulli_b2k(std::size_t k)
{
    return detail::bernoulli().b2_real(k);
}

// B_{2k} / (2k)! at the current working precision.
inline Real bernoulli_b2k_over_factorial(std::size_t k)
{
    return detail::bernoulli().b2_over_fact(k);
}

} // namespace zetapfrac
