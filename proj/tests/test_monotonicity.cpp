#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "zetapfrac/monotonicity.hpp"

#include <random>

using namespace zetapfrac;
using zpf_test::shared_cache;

namespace {
const precision_context ctx = precision_context::with_digits(30);
Real tol(int e) { return pow(Real(10), e); }

std::vector<Real> linspace(double lo, double hi, int n)
{
    std::vector<Real> g;
    for (int i = 0; i < n; ++i)
        g.push_back(Real(lo) + (Real(hi) - Real(lo)) * i / (n - 1));
    return g;
}
} // namespace

TEST_CASE("lemma 2.3 core identity |1 - s/(ir)|^2 = h(v, t, r)")
{
    precision_scope scope(ctx);
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> vb(0.01, 30.0), tb(-20.0, 20.0), rb(0.1, 25.0);
    for (int i = 0; i < 20; ++i) {
        Real v(vb(rng)), t(tb(rng)), r(rb(rng));
        if (i % 2)
            r = -r;
        complex_value s{sqrt(v), t};
        complex_value factor{Real(1) - t / r, s.re / r};
        Real lhs = factor.re * factor.re + factor.im * factor.im;
        CHECK(abs(lhs - h_factor(v, t, r)) < tol(-55) * (1 + lhs));
    }
}

TEST_CASE("monotone profile: closed form and xi-product")
{
    precision_scope scope(ctx);
    product_descriptor single;
    single.scale = Real(2);
    single.thetas = {Real(1)};
    // |E| = |K| (1 + v) at t = 0
    CHECK(monotone_profile(single, Real(0), linspace(0.1, 12.0, 40), ctx).empty());

    const zero_cache& cache = shared_cache(60);
    product_descriptor xi_prod = product_from_zeros(cache, 60, ctx);
    CHECK(monotone_profile(xi_prod, Real(5), linspace(0.05, 16.0, 50), ctx).empty());

    // reciprocal of an increasing positive profile decreases: check through
    // the same op by flipping the grid comparison (values strictly increase)
    complex_value lo = eval_product(xi_prod, complex_value(sqrt(Real(1) / 2), Real(5)));
    complex_value hi = eval_product(xi_prod, complex_value(sqrt(Real(8)), Real(5)));
    CHECK(1 / abs(hi) < 1 / abs(lo));

    CHECK_THROWS_AS(monotone_profile(single, Real(0), {Real(1), Real(1)}, ctx), domain_error);
}

TEST_CASE("complete monotonicity sign tables")
{
    precision_scope scope(ctx);
    product_descriptor single;
    single.scale = Real(3);
    single.thetas = {Real(1)};
    // g(v) = |K|^{-2} (1+v)^{-2}: alternating differences at any step
    monotone_sign_table t0 = complete_monotone_check(single, Real(0), Real(1), Real(1) / 15, 6, ctx);
    CHECK(t0.all_ok);
    CHECK(abs(t0.forward_diffs[0] - Real(1) / 36) < tol(-25));

    // a descriptor with phi factors exercises the other product family
    product_descriptor mixed;
    mixed.scale = Real(1);
    mixed.phis = {Real(2), Real(-3)};
    mixed.thetas = {Real(3) / 2, Real(4)};
    CHECK(complete_monotone_check(mixed, Real(2), Real(1) / 2, Real(1) / 25, 5, ctx).all_ok);

    const zero_cache& cache = shared_cache(60);
    product_descriptor xi_prod = product_from_zeros(cache, 60, ctx);
    monotone_sign_table tx = complete_monotone_check(xi_prod, Real(3), Real(1), Real(1) / 10, 4, ctx);
    CHECK(tx.all_ok);
    CHECK(tx.forward_diffs[0] > 0); // J = 0 reduces to positivity

    CHECK_THROWS_AS(complete_monotone_check(single, Real(0), Real(1), Real(1), 4, ctx), step_error);
    CHECK_THROWS_AS(complete_monotone_check(single, Real(0), Real(1), Real(1) / 10, 7, ctx), domain_error);
}

TEST_CASE("sin-product reciprocal decreases toward a/2")
{
    precision_scope scope(ctx);
    product_descriptor trivial;
    trivial.scale = Real(1);
    CHECK(sin_product_decrease(Real(4), trivial, Real(0), linspace(0.05, 1.95, 40), ctx).empty());

    // the f-relevant case: a = 4, E = xi-product, t = 10
    const zero_cache& cache = shared_cache(60);
    product_descriptor xi_prod = product_from_zeros(cache, 60, ctx);
    CHECK(sin_product_decrease(Real(4), xi_prod, Real(10), linspace(0.05, 1.95, 40), ctx).empty());

    // |sin(x'+it')|^2 = (cosh(2t') - cos(2x'))/2 spot check
    complex_value s{Real(1), Real(2)};
    Real lhs = abs(sin(s));
    Real rhs = sqrt((cosh(Real(4)) - cos(Real(2))) / 2);
    CHECK(abs(lhs - rhs) < tol(-28));

    CHECK_THROWS_AS(sin_product_decrease(Real(4), trivial, Real(0), linspace(0.5, 2.5, 5), ctx), domain_error);
}

TEST_CASE("1/|sin| envelope away from pi Z")
{
    precision_scope scope(ctx);
    // z = 10i: 1/sinh(10) < 2.1 e^{-10}
    sin_recip_result r1 = sin_recip_bound(complex_value(Real(0), Real(10)), Real(1), ctx);
    CHECK(abs(r1.recip_sin - 1 / sinh(Real(10))) < tol(-28));
    CHECK(r1.recip_sin < Real(21) / 10 * r1.envelope);

    // period pi: identical bound data at z and z + pi
    complex_value z{Real(1), Real(3)};
    sin_recip_result a = sin_recip_bound(z, Real(1) / 2, ctx);
    sin_recip_result b = sin_recip_bound(z + complex_value(const_pi()), Real(1) / 2, ctx);
    CHECK(abs(a.recip_sin - b.recip_sin) < tol(-25) * a.recip_sin);

    // compact-set case: x = pi/2, t = 0
    sin_recip_result c = sin_recip_bound(complex_value(const_pi() / 2), Real(1), ctx);
    CHECK(abs(c.recip_sin - 1) < tol(-28));
    CHECK(c.ratio >= 1); // fitted eps(d) must reach at least 1 here

    CHECK_THROWS_AS(sin_recip_bound(complex_value(const_pi() + tol(-3)), Real(1) / 2, ctx), domain_error);

    // fitted eps over a sample family is a bounded constant for fixed d
    Real eps_hat(0);
    for (double x : {0.8, 1.5, 2.2}) {
        for (double t : {0.0, 0.5, 2.0, 8.0}) {
            sin_recip_result r = sin_recip_bound(complex_value(Real(x), Real(t)), Real(1) / 2, ctx);
            if (r.ratio > eps_hat)
                eps_hat = r.ratio;
        }
    }
    INFO("fitted eps(1/2) = " << eps_hat.str(6));
    CHECK(eps_hat < 8);
}

TEST_CASE("1/|b| envelope bound with fitted constant")
{
    precision_scope scope(ctx);
    // disjoint test grid
    for (auto [x, t] : std::vector<std::pair<double, double>>{
             {0.5, 100.0}, {10.0, 30.0}, {37.0, 3.0}, {7.5, 18.0}, {18.0, 60.0}}) {
        b_bound_result r = b_lower_bound_check(complex_value(Real(x), Real(t)), Real(2), ctx);
        CHECK(r.lhs <= r.rhs);
    }
    // rhs decays superexponentially in x at fixed t; lhs follows underneath
    Real prev_lhs, prev_rhs;
    bool first = true;
    for (double x : {10.0, 20.0, 42.0}) {
        b_bound_result r = b_lower_bound_check(complex_value(Real(x), Real(3)), Real(2), ctx);
        CHECK(r.lhs <= r.rhs);
        if (!first) {
            CHECK(r.rhs < prev_rhs / 100);
            CHECK(r.lhs < prev_lhs / 100);
        }
        prev_lhs = r.lhs;
        prev_rhs = r.rhs;
        first = false;
    }
    // t -> -t symmetry
    b_bound_result up = b_lower_bound_check(complex_value(Real(6), Real(20)), Real(2), ctx);
    b_bound_result dn = b_lower_bound_check(complex_value(Real(6), Real(-20)), Real(2), ctx);
    CHECK(abs(up.lhs - dn.lhs) < tol(-25) * up.lhs);
    CHECK(abs(up.rhs - dn.rhs) < tol(-25) * up.rhs);

    CHECK_THROWS_AS(b_lower_bound_check(complex_value(Real(4), Real(1)), Real(2), ctx), domain_error);
}

TEST_CASE("zeta ratio asymptotic (claim 2.6)")
{
    precision_scope scope(ctx);
    // x = 0: exact symmetry
    zeta_ratio_result r0 = zeta_ratio_check(complex_value(Real(0), Real(37)), ctx);
    CHECK(abs(r0.lhs_ratio - 1) < tol(-25));
    CHECK(abs(r0.model - 1) < tol(-40));

    zeta_ratio_result r1 = zeta_ratio_check(complex_value(Real(3) / 10, Real(500)), ctx);
    CHECK(abs(r1.lhs_ratio / r1.model - 1) < tol(-2));

    // deviation shrinks like C/|t|
    zeta_ratio_result lo = zeta_ratio_check(complex_value(Real(3) / 10, Real(60)), ctx);
    CHECK(abs(r1.lhs_ratio / r1.model - 1) < abs(lo.lhs_ratio / lo.model - 1));

    // Corollary 2.8 on D(e-1, 2): ratio bounded by a fitted theta >= 1
    Real theta_hat(0);
    region_d dom{exp(Real(1)) - 1, Real(2)};
    for (double t : {5.0, 20.0, 90.0, 400.0}) {
        Real x_max = Real(2) / log(Real(t));
        for (double fr : {0.0, 0.5, 1.0}) {
            complex_value s{x_max * fr, Real(t)};
            REQUIRE(region_member(s, dom));
            zeta_ratio_result r = zeta_ratio_check(s, ctx);
            if (r.lhs_ratio > theta_hat)
                theta_hat = r.lhs_ratio;
        }
    }
    INFO("fitted theta(e-1, 2) = " << theta_hat.str(6));
    CHECK(theta_hat >= 1);
    CHECK(theta_hat < 20);
}

TEST_CASE("region membership and the corollary 2.9 inclusion")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(12);
    region_d dom{exp(Real(1)) - 1, Real(2)};

    CHECK(region_member(complex_value(Real(0), Real(10)), dom));
    CHECK(!region_member(complex_value(Real(0), Real(1)), dom));
    CHECK(!region_member(complex_value(Real(2), Real(10)), dom));

    // boundary of S'(1) is included (closed semi-disk)
    Real r1 = 1 / log(cache.at(1).gamma);
    CHECK(region_member(complex_value(r1, cache.at(1).gamma), region_s_prime{1}, cache));
    CHECK(!region_member(complex_value(-tol(-6), cache.at(1).gamma), region_s_prime{1}, cache));

    // random points of S'(5) all fall inside D(e-1, 2)
    std::mt19937 rng(17u);
    std::uniform_real_distribution<double> ang(-1.5707, 1.5707), rad(0.0, 1.0);
    Real r5 = 1 / log(cache.at(5).gamma);
    for (int i = 0; i < 100; ++i) {
        double th = ang(rng);
        Real rr = r5 * Real(rad(rng));
        complex_value s = complex_value(Real(0), cache.at(5).gamma) +
                          rr * complex_value(Real(std::cos(th)), Real(std::sin(th)));
        REQUIRE(region_member(s, region_s_prime{5}, cache));
        CHECK(region_member(s, dom));
    }
}

TEST_CASE("hadamard product against direct xi")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(201);

    // s = 0: the empty-product value xi(1/2) exactly
    hadamard_result h0 = hadamard_xi(complex_value(Real(0)), 50, cache, ctx);
    CHECK(abs(h0.product.re - detail::eval_xi(complex_value(Real(1) / 2), ctx.digits).re) < tol(-40));
    CHECK(abs(h0.product.im) < tol(-50));

    // on the Xi line the product is real
    hadamard_result hline = hadamard_xi(complex_value(Real(0), Real(7)), 100, cache, ctx);
    CHECK(abs(hline.product.im) < tol(-40));

    // the relative gap at s = 1 shrinks as the truncation doubles
    Real g50 = hadamard_xi(complex_value(Real(1)), 50, cache, ctx).rel_gap;
    Real g100 = hadamard_xi(complex_value(Real(1)), 100, cache, ctx).rel_gap;
    Real g200 = hadamard_xi(complex_value(Real(1)), 200, cache, ctx).rel_gap;
    CHECK(g100 < g50);
    CHECK(g200 < g100);
    CHECK(g50 < Real(1) / 100); // percent-level at fifty zeros
}

TEST_CASE("laplace kernel quadrature sanity")
{
    precision_scope scope(ctx);
    // int_0^Y e^{-zy} dy -> 1/z within e^{-Re(z) Y}/Re(z); composite Simpson
    for (auto [x, t] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {2.0, 3.0}, {0.5, -1.0}}) {
        complex_value z{Real(x), Real(t)};
        for (double y_top : {8.0, 16.0, 32.0}) {
            int n = 4000;
            Real h = Real(y_top) / n;
            complex_value acc(Real(0));
            for (int i = 0; i <= n; ++i) {
                Real w = (i == 0 || i == n) ? Real(1) : (i % 2 ? Real(4) : Real(2));
                acc += w * exp(complex_value(-z.re * h * i, -z.im * h * i));
            }
            acc = acc * (h / 3);
            Real az4 = pow(abs(z), 4);
            Real bound = exp(-z.re * Real(y_top)) / z.re + pow(h, 4) * az4 * Real(y_top) / 50; // Simpson floor
            CHECK(abs(acc - complex_value(Real(1)) / z) <= bound * (1 + Real(1) / 100));
        }
    }
}
