#pragma once

#include "zetapfrac/derivative.hpp"
#include "zetapfrac/xi_core.hpp"
#include "zetapfrac/zeta.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetapfrac {

struct zero_record {
    std::size_t k = 0; // 1-based index
    Real gamma;
    Real delta;        // min(gamma_k - gamma_{k-1}, gamma_{k+1} - gamma_k); gamma_0 := 0
    Real delta_prime;  // min(1/log gamma_k, delta)
    complex_value zeta_prime;
    Real c_imag;       // c(i gamma_k), filled by the coefficients module
    bool has_c = false;
};

struct zero_cache {
    std::vector<zero_record> records;
    int digits = 0;
    Real t_max{0};
    std::vector<std::string> warnings;

    std::size_t count() const { return records.size(); }

    const zero_record& at(std::size_t k) const
    {
        if (k < 1 || k > records.size())
            throw index_error("zero_cache: index " + std::to_string(k) + " outside table of " +
                              std::to_string(records.size()));
        return records[k - 1];
    }

    zero_record& at(std::size_t k)
    {
        if (k < 1 || k > records.size())
            throw index_error("zero_cache: index " + std::to_string(k) + " outside table of " +
                              std::to_string(records.size()));
        return records[k - 1];
    }
};

// Either "the first N zeros" or "all zeros up to height T".
struct zero_request {
    std::optional<std::size_t> count;
    std::optional<double> t_max;

    static zero_request first(std::size_t n) { return {n, std::nullopt}; }
    static zero_request below(double t) { return {std::nullopt, t}; }
};

namespace detail {

// Riemann-von Mangoldt smooth zero count over [0, T].
inline double smooth_zero_count(double t)
{
    if (t < 2 * 3.141592653589793 * 2.718281828459045)
        return 0.875;
    return t / (2 * 3.141592653589793) * std::log(t / (2 * 3.141592653589793 * 2.718281828459045)) + 0.875;
}

inline double invert_smooth_count(double n)
{
    double t = 30;
    for (int i = 0; i < 80; ++i) {
        double g = smooth_zero_count(t) - n;
        double slope = std::log(t / (2 * 3.141592653589793)) / (2 * 3.141592653589793);
        t -= g / std::max(slope, 1e-3);
        t = std::max(t, 15.0);
    }
    return t;
}

inline Real bisect_xi_zero(Real lo, Real hi, int sign_lo, const Real& width, const precision_context& ctx)
{
    while (hi - lo > width) {
        Real mid = (lo + hi) / 2;
        real_with_err v = big_xi(mid, ctx);
        int sm = v.value >= 0 ? 1 : -1;
        if (sm == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

} // namespace detail

// zeta'(1/2 + i gamma_k) by Cauchy-circle quadrature, with the simple-zero
// check |zeta'| > 10^{-digits/2}.
inline complex_value zeta_prime_at_zero(const zero_cache& cache, std::size_t k, const precision_context& ctx)
{
    precision_scope scope(ctx);
    const zero_record& rec = cache.at(k);
    Real radius = rec.delta_prime / 2;
    if (radius > Real(1) / 10)
        radius = Real(1) / 10;
    auto zf = [&](const complex_value& z) { return detail::zeta_impl(z, ctx.digits, false); };
    complex_value zp = complex_derivative(zf, complex_value(Real(1) / 2, rec.gamma), radius, ctx);
    if (abs(zp) <= pow(Real(10), -Real(ctx.digits) / 2))
        throw simple_zero_violation("numerically vanishing zeta' at zero k=" + std::to_string(k) +
                                    ", |zeta'| = " + abs(zp).str(4));
    return zp;
}

// Scan Xi(t) on a fixed step grid, bracket every sign change, refine each
// bracket by bisection, then fill gaps and zeta' values.  RH is assumed
// operationally: the search lives on the critical line.  A nonzero
// grid_start offsets the grid so a half-step rescan does not nest dyadically
// into the original (which would make the two bisection paths merge).
inline zero_cache locate_zeros(const zero_request& req, const precision_context& ctx, double grid_step = 0.05,
                               double grid_start = 0.0)
{
    precision_scope scope(ctx);
    if (req.count && *req.count > 2000)
        throw domain_error("locate_zeros: desk scale caps the table at 2000 zeros");
    if (req.t_max && *req.t_max > 2000.0)
        throw domain_error("locate_zeros: desk scale caps the height at 2000");
    if (!req.count && !req.t_max)
        throw domain_error("locate_zeros: either a count or a height is required");

    std::size_t want = req.count ? *req.count : 0;
    double t_hi = req.t_max ? *req.t_max + 3.0 // one neighbor above T for the last record's gap
                            : detail::invert_smooth_count(static_cast<double>(want) + 2.5) * 1.02 + 3.0;

    std::vector<Real> ordinates;
    Real width = pow(Real(10), -(ctx.digits - 5));
    double t_lo = grid_start;
    while (true) {
        std::size_t steps = static_cast<std::size_t>((t_hi - t_lo) / grid_step) + 2;
        std::vector<int> signs(steps);
        parallel_for(steps, [&](std::size_t i) {
            Real t = Real(t_lo) + Real(grid_step) * Real(static_cast<unsigned long>(i));
            signs[i] = big_xi(t, ctx).value >= 0 ? 1 : -1;
        });
        std::vector<std::pair<std::size_t, int>> brackets;
        for (std::size_t i = 0; i + 1 < steps; ++i)
            if (signs[i] != signs[i + 1])
                brackets.emplace_back(i, signs[i]);
        std::vector<Real> found(brackets.size());
        parallel_for(brackets.size(), [&](std::size_t j) {
            Real lo = Real(t_lo) + Real(grid_step) * Real(static_cast<unsigned long>(brackets[j].first));
            found[j] = detail::bisect_xi_zero(lo, lo + Real(grid_step), brackets[j].second, width, ctx);
        });
        for (Real& g : found)
            if (ordinates.empty() || g - ordinates.back() > Real(grid_step) / 4)
                ordinates.push_back(std::move(g));
        if (req.t_max || ordinates.size() >= want + 1)
            break;
        // undershot the height estimate; extend the scan window (one step of
        // overlap so an edge-straddling sign change is not lost)
        t_lo = t_hi - 2 * grid_step;
        t_hi *= 1.15;
    }

    zero_cache cache;
    cache.digits = ctx.digits;
    std::size_t n_records;
    if (req.count) {
        n_records = want;
        cache.t_max = (ordinates[want - 1] + ordinates[want]) / 2;
    } else {
        n_records = 0;
        while (n_records < ordinates.size() && ordinates[n_records] <= Real(*req.t_max))
            ++n_records;
        cache.t_max = Real(*req.t_max);
        if (n_records == ordinates.size())
            --n_records; // the last ordinate keeps its neighbor for the gap
    }

    cache.records.resize(n_records);
    for (std::size_t i = 0; i < n_records; ++i) {
        zero_record& r = cache.records[i];
        r.k = i + 1;
        r.gamma = ordinates[i];
        Real left = i == 0 ? ordinates[0] : ordinates[i] - ordinates[i - 1]; // gamma_0 := 0 convention
        Real right = ordinates[i + 1] - ordinates[i];
        r.delta = left < right ? left : right;
        Real inv_log = 1 / log(ordinates[i]);
        r.delta_prime = inv_log < r.delta ? inv_log : r.delta;
    }

    double found_below = 0;
    for (const Real& g : ordinates)
        if (g <= cache.t_max)
            ++found_below;
    double est = detail::smooth_zero_count(static_cast<double>(cache.t_max));
    if (std::abs(found_below - est) > 2.0)
        cache.warnings.push_back("MissedZeroWarning: found " + std::to_string(static_cast<long>(found_below)) +
                                 " zeros below t_max but the smooth estimate gives " + std::to_string(est));

    parallel_for(n_records, [&](std::size_t i) {
        cache.records[i].zeta_prime = zeta_prime_at_zero(cache, i + 1, ctx);
    });
    return cache;
}

// The two gap quantities, recomputed from the stored ordinates.
inline std::pair<Real, Real> gap_stats(const zero_cache& cache, std::size_t k)
{
    if (k < 1 || k >= cache.count() + 1)
        throw index_error("gap_stats: k out of range");
    const zero_record& rec = cache.at(k);
    Real left = k == 1 ? rec.gamma : rec.gamma - cache.at(k - 1).gamma;
    Real right;
    if (k < cache.count())
        right = cache.at(k + 1).gamma - rec.gamma;
    else
        throw index_error("gap_stats: gamma_{k+1} unavailable for the last stored zero");
    Real delta = left < right ? left : right;
    Real inv_log = 1 / log(rec.gamma);
    Real dp = inv_log < delta ? inv_log : delta;
    return {delta, dp};
}

// ---------------------------------------------------------------------------
// Cache persistence: CSV with a JSON sidecar carrying schema/precision and an
// FNV-1a checksum of the CSV bytes.

namespace detail {

inline std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string csv_body(const zero_cache& cache)
{
    int digits = roundtrip_digits();
    std::ostringstream out;
    out << "k,gamma,delta,delta_prime,zetap_re,zetap_im,c_imag\n";
    for (const zero_record& r : cache.records) {
        out << r.k << ',' << to_decimal_string(r.gamma, digits) << ',' << to_decimal_string(r.delta, digits) << ','
            << to_decimal_string(r.delta_prime, digits) << ',' << to_decimal_string(r.zeta_prime.re, digits) << ','
            << to_decimal_string(r.zeta_prime.im, digits) << ',';
        if (r.has_c)
            out << to_decimal_string(r.c_imag, digits);
        out << '\n';
    }
    return out.str();
}

inline std::vector<std::string> split_csv_row(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

inline std::string sidecar_path(const std::string& csv_path)
{
    return csv_path + ".meta.json";
}

inline void save_cache(const zero_cache& cache, const std::string& path)
{
    std::string body = detail::csv_body(cache);
    std::ofstream csv(path, std::ios::binary);
    if (!csv)
        throw schema_error("save_cache: cannot open " + path);
    csv << body;
    csv.close();

    nlohmann::ordered_json meta;
    meta["schema"] = 1;
    meta["digits"] = cache.digits;
    meta["t_max"] = to_decimal_string(cache.t_max, roundtrip_digits());
    meta["count"] = cache.records.size();
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(detail::fnv1a(body)));
    meta["checksum"] = buf;
    std::ofstream side(sidecar_path(path), std::ios::binary);
    side << meta.dump(2) << '\n';
}

inline zero_cache load_cache(const std::string& path, const precision_context& ctx)
{
    precision_scope scope(ctx);
    std::ifstream side(sidecar_path(path), std::ios::binary);
    if (!side)
        throw missing_cache_error("load_cache: missing sidecar " + sidecar_path(path));
    nlohmann::json meta;
    try {
        side >> meta;
    } catch (const std::exception& e) {
        throw schema_error(std::string("load_cache: bad sidecar json: ") + e.what());
    }
    if (!meta.contains("schema") || meta["schema"].get<int>() != 1)
        throw schema_error("load_cache: unsupported schema version");

    std::ifstream csv(path, std::ios::binary);
    if (!csv)
        throw missing_cache_error("load_cache: missing cache file " + path);
    std::stringstream ss;
    ss << csv.rdbuf();
    std::string body = ss.str();

    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(detail::fnv1a(body)));
    if (meta["checksum"].get<std::string>() != buf)
        throw checksum_error("load_cache: checksum mismatch for " + path);

    zero_cache cache;
    cache.digits = meta["digits"].get<int>();
    cache.t_max = Real(meta["t_max"].get<std::string>());
    if (cache.digits < ctx.digits)
        cache.warnings.push_back("PrecisionWarning: cache stored at " + std::to_string(cache.digits) +
                                 " digits, context requests " + std::to_string(ctx.digits));

    std::istringstream lines(body);
    std::string line;
    if (!std::getline(lines, line) || line != "k,gamma,delta,delta_prime,zetap_re,zetap_im,c_imag")
        throw schema_error("load_cache: unexpected CSV header");
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        auto cols = detail::split_csv_row(line);
        if (cols.size() != 7)
            throw schema_error("load_cache: malformed row: " + line);
        zero_record r;
        r.k = std::stoull(cols[0]);
        r.gamma = Real(cols[1]);
        r.delta = Real(cols[2]);
        r.delta_prime = Real(cols[3]);
        r.zeta_prime = complex_value(Real(cols[4]), Real(cols[5]));
        if (!cols[6].empty()) {
            r.c_imag = Real(cols[6]);
            r.has_c = true;
        }
        cache.records.push_back(std::move(r));
    }
    if (cache.records.size() != meta["count"].get<std::size_t>())
        throw schema_error("load_cache: row count disagrees with sidecar");
    return cache;
}

} // namespace zetapfrac
