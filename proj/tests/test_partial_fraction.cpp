#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "zetapfrac/partial_fraction.hpp"

#include <random>

using namespace zetapfrac;
using zpf_test::shared_cache;

namespace {
const precision_context ctx = precision_context::with_digits(30);
Real tol(int e) { return pow(Real(10), e); }
} // namespace

TEST_CASE("truncation parameter validation")
{
    expansion_truncation t;
    CHECK_NOTHROW(t.validate());
    t.d = Real(3);
    CHECK_THROWS_AS(t.validate(), config_error);
    t.d = Real(2);
    t.alpha = Real(1) / 2;
    CHECK_THROWS_AS(t.validate(), config_error);
}

TEST_CASE("classify against the three example regions")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(12);
    expansion_truncation t;

    region_tag a = classify(complex_value(Real(41) / 10), t, cache);
    CHECK(a.where == region_tag::kind::real_disk);
    CHECK(a.w == 1);

    expansion_truncation t1;
    t1.d = Real(1);
    region_tag b = classify(complex_value(Real(2), Real(2)), t1, cache);
    CHECK(b.where == region_tag::kind::exterior);
    CHECK(b.s_member);

    complex_value near_zero{Real(0), cache.at(1).gamma + Real(1) / 100};
    region_tag c = classify(near_zero, t, cache);
    CHECK(c.where == region_tag::kind::imag_disk);
    CHECK(c.k == 1);
    CHECK(t.alpha * cache.at(1).delta_prime > Real(1) / 100);

    region_tag d = classify(conj(near_zero), t, cache);
    CHECK(d.k == -1);
}

TEST_CASE("p_r: oddness, imaginary axis, truncation consistency")
{
    precision_scope scope(ctx);
    complex_value s{Real(2), Real(0)};
    truncated_value plus = p_r_eval(s, 10, ctx);
    truncated_value minus = p_r_eval(-s, 10, ctx);
    CHECK(abs(plus.value + minus.value) < tol(-45));

    truncated_value imag_axis = p_r_eval(complex_value(Real(0), Real(2)), 10, ctx);
    CHECK(abs(imag_axis.value.re) < tol(-45));

    truncated_value w10 = p_r_eval(s, 10, ctx);
    truncated_value w20 = p_r_eval(s, 20, ctx);
    CHECK(abs(w10.value - w20.value) <= w10.tail_bound);
    CHECK(w20.tail_bound < w10.tail_bound);

    CHECK_THROWS_AS(p_r_eval(complex_value(Real(8)), 10, ctx), pole_error);
}

TEST_CASE("p_i: zero at origin, conjugation, truncation consistency")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(201);
    CHECK(abs(p_i_eval(complex_value(Real(0)), 100, cache, ctx).value) < tol(-50));

    complex_value s{Real(2), Real(3)};
    truncated_value v = p_i_eval(s, 100, cache, ctx);
    truncated_value vc = p_i_eval(conj(s), 100, cache, ctx);
    CHECK(abs(vc.value - conj(v.value)) < tol(-45));

    truncated_value n100 = p_i_eval(complex_value(Real(2)), 100, cache, ctx);
    truncated_value n200 = p_i_eval(complex_value(Real(2)), 200, cache, ctx);
    CHECK(abs(n100.value - n200.value) <= n100.tail_bound);

    CHECK_THROWS_AS(p_i_eval(complex_value(Real(0), cache.at(3).gamma), 100, cache, ctx), pole_error);
}

TEST_CASE("delta at s = 2 sits inside the tail budget")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(201);
    expansion_truncation t; // W = 50, N = 100
    delta_result d = delta_eval(complex_value(Real(2)), t, cache, ctx);
    CHECK(abs(d.delta) < tol(-3));
    CHECK(abs(d.delta) <= d.tail_budget);

    // the defect is genuinely the truncation tail: doubling (W, N) shrinks it
    expansion_truncation t2;
    t2.w_cut = 100;
    t2.n_cut = 200;
    delta_result d2 = delta_eval(complex_value(Real(2)), t2, cache, ctx);
    CHECK(abs(d2.delta) * 2 < abs(d.delta));
}

TEST_CASE("delta oddness and pole guard")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(201);
    expansion_truncation t;
    t.n_cut = 100;
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> box(0.3, 9.0);
    int done = 0;
    while (done < 6) {
        complex_value s{Real(box(rng)), Real(box(rng))};
        if (abs(s - complex_value(4 * round(s.re / 4))) < Real(1) / 20)
            continue; // keep clear of the pole guard
        delta_result dp = delta_eval(s, t, cache, ctx);
        delta_result dm = delta_eval(-s, t, cache, ctx);
        CHECK(abs(dp.delta + dm.delta) <= dp.delta.err + dm.delta.err + tol(-40));
        ++done;
    }
    CHECK_THROWS_AS(delta_eval(complex_value(Real(4) + tol(-4)), t, cache, ctx), pole_error);
    CHECK_THROWS_AS(delta_eval(complex_value(Real(0), cache.at(1).gamma + tol(-4)), t, cache, ctx), pole_error);
}

TEST_CASE("delta on the even midpoints stays within budget")
{
    // The paper's limit Delta(4w+2) -> 0 concerns the untruncated expansion;
    // at fixed truncation the numeric defect is the p_i tail, which grows
    // linearly in |s| on this range.  The checkable content is the budget.
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(201);
    expansion_truncation t;
    for (long w = 1; w <= 5; ++w) {
        delta_result d = delta_eval(complex_value(Real(4 * w + 2)), t, cache, ctx);
        CHECK(abs(d.delta) <= d.tail_budget);
        CHECK(abs(d.delta) < tol(-5));
    }
}

TEST_CASE("local_term: residue cancellation and far-pole decay")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(60);
    expansion_truncation t;

    // (s - 4w)(f - T) -> 0 as s -> 4w
    for (long w : {1L, 2L}) {
        complex_value s(Real(4 * w) + tol(-6));
        region_tag tag = classify(s, t, cache);
        REQUIRE(tag.where == region_tag::kind::real_disk);
        local_term_result lt = local_term(s, tag, cache, ctx);
        CHECK(abs((s - complex_value(Real(4 * w))) * lt.f_minus_t) < tol(-4));
    }

    // |f - T| on the real-disk boundary collapses as w grows
    Real prev;
    bool first = true;
    for (long w : {5L, 10L, 15L}) {
        complex_value s(Real(4 * w) + 2);
        region_tag tag;
        tag.where = region_tag::kind::real_disk;
        tag.w = w;
        local_term_result lt = local_term(s, tag, cache, ctx);
        Real cur = abs(lt.f_minus_t);
        if (!first)
            CHECK(cur < prev / 100);
        prev = cur;
        first = false;
    }

    // on the semicircle points of B_i(alpha): downward trend in k (the
    // conditional theorem's uniform vanishing), fluctuations allowed
    Real alpha = t.alpha;
    std::vector<Real> vals;
    for (std::size_t k = 1; k <= 50; ++k) {
        const zero_record& r = cache.at(k);
        complex_value s = complex_value(Real(0), r.gamma) +
                          (alpha * r.delta_prime / sqrt(Real(2))) * complex_value(Real(1), Real(1));
        region_tag tag;
        tag.where = region_tag::kind::imag_disk;
        tag.k = static_cast<long>(k);
        local_term_result lt = local_term(s, tag, cache, ctx);
        vals.push_back(abs(lt.f_minus_t));
    }
    Real head(0), tail(0);
    for (std::size_t k = 0; k < 10; ++k)
        head = std::max(head, vals[k], [](const Real& a, const Real& b) { return a < b; });
    for (std::size_t k = 40; k < 50; ++k)
        tail = std::max(tail, vals[k], [](const Real& a, const Real& b) { return a < b; });
    CHECK(tail < head / 5);

    region_tag ext;
    CHECK_THROWS_AS(local_term(complex_value(Real(2), Real(2)), ext, cache, ctx), domain_error);
}

TEST_CASE("lemma 1.1: A' bound, scaling, and the direct-proof radius")
{
    precision_scope scope(ctx);
    std::vector<pole_spec> single{{complex_value(Real(0)), Real(1), Real(1)}};
    a_prime_result one = tail_bound_A_prime(single, Real(1) / 100, ctx);
    CHECK(abs(one.a_prime - 1) < tol(-40));

    // a small system mimicking the real poles of f
    std::vector<pole_spec> poles;
    for (long w = 0; w <= 12; ++w)
        poles.push_back({complex_value(Real(4 * w)), Real(2), abs(c_at(real_pole{w}, ctx))});
    a_prime_result sys = tail_bound_A_prime(poles, Real(1) / 100, ctx);

    std::vector<pole_spec> doubled = poles;
    for (pole_spec& p : doubled)
        p.radius = p.radius / 2; // halving radii doubles A'
    a_prime_result sys2 = tail_bound_A_prime(doubled, Real(1) / 100, ctx);
    CHECK(abs(sys2.a_prime - 2 * sys.a_prime) < tol(-30));

    // G' <= A' outside the disks; G' < eps beyond R(eps)
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> xb(-30.0, 80.0), yb(-40.0, 40.0);
    int outside = 0;
    while (outside < 40) {
        complex_value s{Real(xb(rng)), Real(yb(rng))};
        bool inside = false;
        for (const pole_spec& p : poles)
            if (abs(s - p.center) <= p.radius)
                inside = true;
        if (inside)
            continue;
        CHECK(g_prime(s, poles) <= sys.a_prime);
        ++outside;
    }
    for (int j = 0; j < 100; ++j) {
        Real theta = 2 * const_pi() * j / 100;
        Real st, ct;
        sin_cos(theta, st, ct);
        complex_value s = (one.r_of_eps + 1) * complex_value(ct, st);
        CHECK(g_prime(s, single) < Real(1) / 100);
        complex_value s2 = (sys.r_of_eps + 1) * complex_value(ct, st);
        CHECK(g_prime(s2, poles) < Real(1) / 100);
    }

    std::vector<pole_spec> overlapping{{complex_value(Real(0)), Real(2), Real(1)},
                                       {complex_value(Real(3)), Real(2), Real(1)}};
    CHECK_THROWS_AS(tail_bound_A_prime(overlapping, Real(1) / 100, ctx), disjointness_error);
}

TEST_CASE("taylor remainder bound on the three configured cases")
{
    precision_scope scope(ctx);
    auto ex = [](const complex_value& z) { return exp(z); };
    taylor_check_result t1 = taylor_remainder_check(ex, complex_value(Real(0)), Real(2), Real(1), 1, ctx);
    CHECK(t1.lhs_max <= t1.rhs_bound * (1 + Real(1) / 100));
    CHECK(!t1.analyticity_warning);

    // degree n-1 polynomial: F_n vanishes identically
    auto poly = [](const complex_value& z) { return z * z + Real(3) * z + complex_value(Real(1)); };
    taylor_check_result t2 = taylor_remainder_check(poly, complex_value(Real(1)), Real(2), Real(1), 3, ctx);
    CHECK(t2.lhs_max < tol(-30));
    CHECK(t2.lhs_max <= t2.rhs_bound);

    // the paper's case ('): h = 1/(2 xi(1/2+s)), z0 = 8, rho' = 3, r = d = 2
    auto h = [](const complex_value& z) {
        return complex_value(Real(1)) / (Real(2) * detail::eval_xi(z + complex_value(Real(1) / 2), 30));
    };
    taylor_check_result t3 = taylor_remainder_check(h, complex_value(Real(8)), Real(3), Real(2), 1, ctx);
    CHECK(t3.lhs_max <= t3.rhs_bound * (1 + Real(1) / 100));

    CHECK_THROWS_AS(taylor_remainder_check(ex, complex_value(Real(0)), Real(1), Real(2), 1, ctx), domain_error);
}

TEST_CASE("claim 1.1 decomposition: two-sided agreement and the 2.4 bound")
{
    precision_scope scope(ctx);
    const zero_cache& cache = shared_cache(12);

    std::mt19937 rng(2026u);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586), rad(0.1, 0.9);

    for (int i = 0; i < 10; ++i) {
        long w = 1 + static_cast<long>(i % 4);
        complex_value z(Real(4 * w));
        double th = angle(rng);
        Real rr = Real(rad(rng)) * 2;
        complex_value s = z + rr * complex_value(Real(std::cos(th)), Real(std::sin(th)));
        decomposition_result d = decomposition_check(s, z, dc_case::prime, cache, ctx);
        CHECK(d.residual <= 100 * d.err + tol(-20));
        CHECK(d.delta_abs <= d.bound * (1 + Real(1) / 100));
    }
    for (int i = 0; i < 10; ++i) {
        std::size_t k = 1 + static_cast<std::size_t>(i % 5);
        const zero_record& r = cache.at(k);
        complex_value z(Real(0), r.gamma);
        double th = angle(rng);
        Real rr = Real(rad(rng)) * (r.delta_prime / 4);
        complex_value s = z + rr * complex_value(Real(std::cos(th)), Real(std::sin(th)));
        decomposition_result d = decomposition_check(s, z, dc_case::doubleprime, cache, ctx);
        CHECK(d.residual <= 100 * d.err + tol(-20));
        CHECK(d.delta_abs <= d.bound * (1 + Real(1) / 100));
    }

    // difference-quotient guard very close to the pole
    complex_value z(Real(8));
    decomposition_result nearp = decomposition_check(z + complex_value(tol(-8)), z, dc_case::prime, cache, ctx);
    CHECK(nearp.residual < tol(-15));
    CHECK(std::isfinite(static_cast<double>(nearp.delta_abs)));

    CHECK_THROWS_AS(decomposition_check(complex_value(Real(9)), complex_value(Real(7)), dc_case::prime, cache, ctx),
                    case_error);
}

TEST_CASE("lemma 1.2(1): |f| decays on S away from the real disks")
{
    precision_scope scope(ctx);
    Real prev_max;
    bool first = true;
    for (double radius : {50.0, 100.0, 200.0}) {
        Real mx(0);
        for (int j = 0; j < 32; ++j) {
            // arc points with |Re| >= 1/2, kept 2+ away from multiples of 4
            double phi = -1.56 + 3.12 * j / 31.0;
            complex_value s{Real(radius * std::cos(phi)), Real(radius * std::sin(phi))};
            if (abs(s.re) < Real(1) / 2)
                continue;
            Real w_near = round(s.re / 4);
            if (abs(s - complex_value(4 * w_near)) <= 2)
                continue;
            Real v = abs(eval_block(block_name::f, s, ctx));
            if (v > mx)
                mx = v;
        }
        if (!first)
            CHECK(mx < prev_max);
        if (radius >= 100.0)
            CHECK(mx < tol(-3));
        prev_max = mx;
        first = false;
    }
}
