// Batch verification CLI: locates zeta zeros, fills residue coefficients,
// and runs the expansion / conjecture / monotonicity / Laplace check suites.

#include "zetapfrac/cli.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv)
{
    CLI::App app{"zetapfrac: numerical checks for the partial-fraction expansion of 1/(sin(pi s/4) 2 xi(1/2+s))"};
    app.require_subcommand(1);

    zetapfrac::cli::run_config cfg;
    std::vector<std::string> s_specs;

    app.add_option("--digits", cfg.digits, "working precision in decimal digits (>= 15)")->capture_default_str();
    app.add_option("--n", cfg.n, "zero count / truncation cutoff")->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "imaginary-disk radius factor in (0, 1/2)")->capture_default_str();
    app.add_option("--d", cfg.d, "real-disk radius in (0, 2]")->capture_default_str();
    app.add_option("--W", cfg.w_cut, "real-pole cutoff W")->capture_default_str();
    app.add_option("--cache", cfg.cache_path, "zero cache CSV path (env ZETAPFRAC_CACHE overrides the default)")
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "report file (default: stdout)");
    app.add_option("--format", cfg.format, "report format: csv|json")->capture_default_str();
    app.add_option("--s", s_specs, "evaluation point RE,IM (repeatable)");
    app.add_option("--tmax", cfg.t_max, "locate zeros below this height instead of --n");
    app.add_option("--ymin", cfg.y_min, "laplace window lower edge")->capture_default_str();
    app.add_option("--ymax", cfg.y_max, "laplace window upper edge")->capture_default_str();
    app.add_option("--quad-points", cfg.quad_points, "Gauss-Legendre nodes per panel")->capture_default_str();

    for (const char* name : {"zeros", "coeffs", "verify-expansion", "audit-conjectures", "monotone-check",
                             "laplace-check", "all"})
        app.add_subcommand(name)->fallthrough(); // global flags may follow the subcommand

    CLI11_PARSE(app, argc, argv);

    try {
        for (const std::string& spec : s_specs) {
            auto comma = spec.find(',');
            if (comma == std::string::npos)
                throw zetapfrac::config_error("--s expects RE,IM");
            cfg.s_points.emplace_back(std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1)));
        }
        return zetapfrac::cli::run(app.get_subcommands().at(0)->get_name(), cfg);
    } catch (const zetapfrac::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
