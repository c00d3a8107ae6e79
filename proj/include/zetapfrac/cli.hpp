#pragma once

#include "zetapfrac/contour_audit.hpp"
#include "zetapfrac/laplace.hpp"
#include "zetapfrac/monotonicity.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace zetapfrac {
namespace cli {

using json = nlohmann::ordered_json;

// Exit statuses: hard contract failures return 1, informational-only issues
// (warnings; never conjecture verdicts) return 2.
enum status : int { ok = 0, hard_failure = 1, informational = 2 };

struct run_config {
    int digits = 30;
    std::size_t n = 100;       // zeros to locate / truncation cutoff
    double alpha = 0.25;
    double d = 2.0;
    std::size_t w_cut = 50;
    std::optional<double> t_max;
    std::string cache_path = "zetapfrac_cache.csv";
    std::string out_path;      // empty: stdout
    std::string format = "json"; // csv|json where both exist
    std::vector<std::pair<double, double>> s_points;
    double y_min = -40.0;
    double y_max = 16.0;
    int quad_points = 8;

    precision_context context() const
    {
        precision_context ctx = precision_context::with_digits(digits);
        return ctx;
    }

    void validate() const
    {
        context();
        if (n < 1 || n > 2000)
            throw config_error("run_config: --n must lie in [1, 2000]");
        if (!(alpha > 0 && alpha < 0.5))
            throw config_error("run_config: --alpha must lie in (0, 1/2)");
        if (!(d > 0 && d <= 2))
            throw config_error("run_config: --d must lie in (0, 2]");
        if (w_cut < 1 || w_cut > 500)
            throw config_error("run_config: --W must lie in [1, 500]");
        if (format != "csv" && format != "json")
            throw config_error("run_config: --format must be csv or json");
        if (!(y_min < 0 && y_max > 0))
            throw config_error("run_config: laplace window needs y_min < 0 < y_max");
    }
};

namespace detail {

inline std::string real_str(const Real& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

inline zero_cache load_or_fail(const run_config& cfg, const precision_context& ctx)
{
    try {
        return load_cache(cfg.cache_path, ctx);
    } catch (const missing_cache_error&) {
        throw missing_cache_error("no cache at '" + cfg.cache_path + "'; run the zeros subcommand first");
    }
}

inline int warn_status(const zero_cache& cache, std::ostream& log)
{
    for (const std::string& w : cache.warnings)
        log << "warning: " << w << '\n';
    return cache.warnings.empty() ? ok : informational;
}

} // namespace detail

// --- zeros ------------------------------------------------------------------

inline int run_zeros(const run_config& cfg, json& report, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_request req = cfg.t_max ? zero_request::below(*cfg.t_max) : zero_request::first(cfg.n);
    zero_cache cache = locate_zeros(req, ctx);
    save_cache(cache, cfg.cache_path);

    report["count"] = cache.count();
    report["digits"] = cache.digits;
    report["t_max"] = detail::real_str(cache.t_max, ctx.digits);
    report["gamma_first"] = detail::real_str(cache.at(1).gamma, ctx.digits);
    report["gamma_last"] = detail::real_str(cache.at(cache.count()).gamma, ctx.digits);
    report["cache"] = cfg.cache_path;
    report["warnings"] = cache.warnings;
    return detail::warn_status(cache, log);
}

// --- coeffs -----------------------------------------------------------------

inline int run_coeffs(const run_config& cfg, json& report, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_cache cache = detail::load_or_fail(cfg, ctx);
    fill_c_imag(cache, ctx);
    save_cache(cache, cfg.cache_path);

    std::size_t n = std::min<std::size_t>(cfg.n, cache.count());
    series_constants_result sc = series_constants(cache, n, ctx);
    report["filled"] = cache.count();
    report["cutoff"] = n;
    report["A_N"] = detail::real_str(sc.a_partial, ctx.digits);
    report["A_tail"] = detail::real_str(sc.a_tail, 8);
    report["B_N"] = detail::real_str(sc.b_partial, ctx.digits);
    report["B_tail"] = detail::real_str(sc.b_tail, 8);
    report["C_N"] = detail::real_str(sc.c_partial, ctx.digits);
    report["C_tail"] = detail::real_str(sc.c_tail, 8);
    report["c_decay_exponent"] = detail::real_str(sc.fit.p, 8);
    json ct = json::array();
    for (unsigned k = 0; k <= 8; ++k)
        ct.push_back(detail::real_str(c_at(real_pole{static_cast<long>(k)}, ctx), ctx.digits));
    report["c_real_poles"] = ct;
    report["c_imag_first"] = detail::real_str(cache.at(1).c_imag, ctx.digits);
    return detail::warn_status(cache, log);
}

// --- verify-expansion --------------------------------------------------------

inline int run_verify_expansion(const run_config& cfg, json& report, std::string& csv_out, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_cache cache = detail::load_or_fail(cfg, ctx);
    int status_code = detail::warn_status(cache, log);

    expansion_truncation trunc;
    trunc.w_cut = cfg.w_cut;
    trunc.n_cut = std::min<std::size_t>(cfg.n, cache.count());
    trunc.d = Real(cfg.d);
    trunc.alpha = Real(cfg.alpha);

    std::vector<std::pair<double, double>> pts = cfg.s_points;
    if (pts.empty())
        pts = {{2, 0}, {2, 2}, {1, 10}, {6, 3}, {-2, 0}, {-1, -10}};

    std::ostringstream csv;
    csv << "s_re,s_im,region,f,p,delta_abs,tail_budget\n";
    json rows = json::array();
    bool all_within = true;
    for (auto [re, im] : pts) {
        complex_value s{Real(re), Real(im)};
        region_tag tag = classify(s, trunc, cache);
        const char* region_name = tag.where == region_tag::kind::real_disk   ? "real_disk"
                                  : tag.where == region_tag::kind::imag_disk ? "imag_disk"
                                                                             : "exterior";
        delta_result dr = delta_eval(s, trunc, cache, ctx);
        complex_value f = eval_block(block_name::f, s, ctx);
        complex_value p = f - dr.delta;
        Real delta_abs = abs(dr.delta);
        bool within = delta_abs <= (dr.tail_budget > Real(1) / 1000 ? dr.tail_budget : Real(1) / 1000);
        all_within = all_within && within;

        csv << detail::real_str(Real(re), 17) << ',' << detail::real_str(Real(im), 17) << ',' << region_name << ','
            << to_string(f, ctx.digits) << ',' << to_string(p, ctx.digits) << ','
            << detail::real_str(delta_abs, 8) << ',' << detail::real_str(dr.tail_budget, 8) << '\n';
        json row;
        row["s_re"] = detail::real_str(Real(re), 17);
        row["s_im"] = detail::real_str(Real(im), 17);
        row["region"] = region_name;
        row["f"] = to_string(f, ctx.digits);
        row["p"] = to_string(p, ctx.digits);
        row["delta_abs"] = detail::real_str(delta_abs, 8);
        row["tail_budget"] = detail::real_str(dr.tail_budget, 8);
        row["within_budget"] = within;
        rows.push_back(row);
    }
    csv_out = csv.str();
    report["w_cut"] = trunc.w_cut;
    report["n_cut"] = trunc.n_cut;
    report["rows"] = rows;
    report["all_within_budget"] = all_within;
    if (!all_within)
        return hard_failure;
    return status_code;
}

// --- audit-conjectures --------------------------------------------------------

inline int run_audit(const run_config& cfg, json& report, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_cache cache = detail::load_or_fail(cfg, ctx);
    int status_code = detail::warn_status(cache, log);

    std::size_t n = std::min<std::size_t>(cfg.n, cache.count());
    audit_report rep = exponent_estimates(n, Real(cfg.alpha), cache, ctx);

    auto put_estimate = [&](const char* name, const exponent_estimate& e) {
        report[name] = {{"value", detail::real_str(e.value, 8)}, {"std_err", detail::real_str(e.std_err, 6)}};
    };
    report["alpha"] = cfg.alpha;
    report["n_zeros"] = rep.n_zeros;
    put_estimate("eps0_hat", rep.eps0);
    put_estimate("eps1_hat", rep.eps1);
    put_estimate("eps2_hat", rep.eps2);
    put_estimate("eps1tilde_hat", rep.eps1_tilde);
    auto put_verdict = [&](const char* name, const conjecture_verdict& v, const char* statement) {
        report["verdicts"][name] = {{"holds", v.holds}, {"margin", detail::real_str(v.margin, 8)},
                                    {"statement", statement}};
    };
    put_verdict("C1ii", rep.c1_ii, "eps0 < 3/4");
    put_verdict("Cprime", rep.c_prime, "eps0 < 7/4");
    put_verdict("C3ii", rep.c3_ii, "eps1 + eps2 < 3/4");
    put_verdict("C4ii", rep.c4_ii, "eps1~ + eps2 <= 1");
    report["note"] = "verdicts are informational; C1-C4 are open conjectures";
    return status_code; // verdicts never gate
}

// --- monotone-check ------------------------------------------------------------

inline int run_monotone(const run_config& cfg, json& report, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_cache cache = detail::load_or_fail(cfg, ctx);
    int status_code = detail::warn_status(cache, log);
    bool all_ok = true;

    std::size_t k_terms = std::min<std::size_t>(cfg.n, cache.count());
    product_descriptor xi_prod = product_from_zeros(cache, k_terms, ctx);

    std::vector<Real> v_grid;
    for (int i = 0; i < 50; ++i)
        v_grid.push_back(Real(4) / 100 + Real(16) * i / 49);
    json profiles = json::array();
    for (double t : {0.0, 5.0, 14.2, 30.0}) {
        auto viols = monotone_profile(xi_prod, Real(t), v_grid, ctx);
        profiles.push_back({{"t", t}, {"violations", viols}});
        all_ok = all_ok && viols.empty();
    }
    report["xi_profile_increasing_in_x2"] = profiles;

    std::vector<Real> x_grid;
    for (int i = 0; i < 40; ++i)
        x_grid.push_back(Real(5) / 100 + (Real(195) / 100 - Real(5) / 100) * i / 39);
    product_descriptor trivial;
    trivial.scale = Real(1);
    auto sin_triv = sin_product_decrease(Real(4), trivial, Real(0), x_grid, ctx);
    auto sin_xi = sin_product_decrease(Real(4), xi_prod, Real(10), x_grid, ctx);
    report["sin_product_decreasing"] = {{"trivial_t0", sin_triv}, {"xi_product_t10", sin_xi}};
    all_ok = all_ok && sin_triv.empty() && sin_xi.empty();

    monotone_sign_table cm = complete_monotone_check(xi_prod, Real(3), Real(1), Real(1) / 10, 4, ctx);
    json cm_json;
    cm_json["all_ok"] = cm.all_ok;
    json diffs = json::array();
    for (std::size_t j = 0; j < cm.forward_diffs.size(); ++j)
        diffs.push_back({{"j", j}, {"forward_diff", detail::real_str(cm.forward_diffs[j], 8)},
                         {"sign_ok", static_cast<bool>(cm.sign_ok[j])}});
    cm_json["table"] = diffs;
    report["complete_monotonicity_J4"] = cm_json;
    all_ok = all_ok && cm.all_ok;

    json gaps = json::array();
    Real prev_gap;
    bool first = true;
    bool gap_trend = true;
    for (std::size_t kk : {k_terms / 4, k_terms / 2, k_terms}) {
        if (kk == 0)
            continue;
        hadamard_result h = hadamard_xi(complex_value(Real(1)), kk, cache, ctx);
        gaps.push_back({{"k_terms", kk}, {"rel_gap", detail::real_str(h.rel_gap, 8)}});
        if (!first)
            gap_trend = gap_trend && h.rel_gap < prev_gap;
        prev_gap = h.rel_gap;
        first = false;
    }
    report["hadamard_rel_gap_trend"] = {{"decreasing", gap_trend}, {"gaps", gaps}};
    all_ok = all_ok && gap_trend;

    report["all_ok"] = all_ok;
    return all_ok ? status_code : hard_failure;
}

// --- laplace-check --------------------------------------------------------------

inline int run_laplace(const run_config& cfg, json& report, std::ostream& log)
{
    precision_context ctx = cfg.context();
    zero_cache cache = detail::load_or_fail(cfg, ctx);
    int status_code = detail::warn_status(cache, log);

    density_config dcfg;
    dcfg.n_zeros = std::min<std::size_t>(cfg.n, cache.count());
    dcfg.y_min = Real(cfg.y_min);
    dcfg.y_max = Real(cfg.y_max);
    dcfg.quad_points = cfg.quad_points;

    std::vector<std::pair<double, double>> pts = cfg.s_points;
    if (pts.empty())
        pts = {{2, 0}};

    laplace_quadrature quad(dcfg, cache, ctx);
    json rows = json::array();
    bool all_within = true;
    for (auto [re, im] : pts) {
        transform_result r = transform_residual(complex_value(Real(re), Real(im)), dcfg, cache, ctx, &quad);
        bool within = r.residual <= r.budget;
        all_within = all_within && within;
        rows.push_back({{"s_re", re},
                        {"s_im", im},
                        {"integral_re", detail::real_str(r.integral.re, 17)},
                        {"integral_im", detail::real_str(r.integral.im, 17)},
                        {"f_re", detail::real_str(r.f_value.re, ctx.digits)},
                        {"f_im", detail::real_str(r.f_value.im, ctx.digits)},
                        {"residual", detail::real_str(r.residual, 8)},
                        {"budget", detail::real_str(r.budget, 8)},
                        {"within_budget", within}});
    }
    report["n_zeros"] = dcfg.n_zeros;
    report["window"] = {cfg.y_min, cfg.y_max};
    report["nodes"] = quad.node_count();
    report["points"] = rows;
    report["all_within_budget"] = all_within;
    return all_within ? status_code : hard_failure;
}

// --- driver -----------------------------------------------------------------

inline void write_report(const run_config& cfg, const std::string& text)
{
    if (cfg.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out)
        throw config_error("cannot open report file " + cfg.out_path);
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
}

inline int run(const std::string& subcommand, run_config cfg, std::ostream& log = std::cerr)
{
    cfg.validate();
    if (const char* env = std::getenv("ZETAPFRAC_CACHE"); env && cfg.cache_path == run_config{}.cache_path)
        cfg.cache_path = env;

    json report;
    int code = ok;
    std::string text;

    if (subcommand == "zeros") {
        code = run_zeros(cfg, report, log);
        text = report.dump(2);
    } else if (subcommand == "coeffs") {
        code = run_coeffs(cfg, report, log);
        text = report.dump(2);
    } else if (subcommand == "verify-expansion") {
        std::string csv;
        code = run_verify_expansion(cfg, report, csv, log);
        text = cfg.format == "csv" ? csv : report.dump(2);
    } else if (subcommand == "audit-conjectures") {
        code = run_audit(cfg, report, log);
        text = report.dump(2);
    } else if (subcommand == "monotone-check") {
        code = run_monotone(cfg, report, log);
        text = report.dump(2);
    } else if (subcommand == "laplace-check") {
        code = run_laplace(cfg, report, log);
        text = report.dump(2);
    } else if (subcommand == "all") {
        json combined;
        int worst = ok;
        auto fold = [&worst](int c) { worst = (c == hard_failure || worst == hard_failure) ? hard_failure
                                              : (c == informational ? informational : worst); };
        fold(run_zeros(cfg, combined["zeros"], log));
        fold(run_coeffs(cfg, combined["coeffs"], log));
        {
            std::string csv;
            fold(run_verify_expansion(cfg, combined["verify_expansion"], csv, log));
        }
        fold(run_audit(cfg, combined["audit_conjectures"], log));
        fold(run_monotone(cfg, combined["monotone_check"], log));
        fold(run_laplace(cfg, combined["laplace_check"], log));
        code = worst;
        text = combined.dump(2);
    } else {
        throw config_error("unknown subcommand '" + subcommand + "'");
    }
    write_report(cfg, text);
    return code;
}

} // namespace cli
} // namespace zetapfrac
