#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ophh/campaign.hpp"
#include "ophh/errors.hpp"

// Campaign driver. Exit codes: 0 the expected outcome was observed, 1 the
// expectation was violated, 2 configuration or I/O trouble.
int main(int argc, char** argv) {
    CLI::App app{"numerical verification campaigns for operator inequality chains"};

    std::string config_path;
    app.add_option("--config", config_path, "key = value file applied before the flags");

    // Flag values are applied through the same keys the config file uses, and
    // only when actually given, so flags override the file cleanly.
    std::vector<std::pair<std::string, std::string>> overrides;
    const auto add_keyed = [&](const std::string& flag, const std::string& key,
                               const std::string& help) {
        app.add_option_function<std::string>(
               flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
               help)
            ->type_name("TEXT");
    };

    add_keyed("--suite", "suite",
              "preinvex | hh-chain | corollary | product-right | product-left | trapezoid | "
              "condition-c | phi-convex | reductions");
    add_keyed("--f", "f", "scalar function, e.g. square, neg_abs, affine:0,1, poly:1,0,2");
    add_keyed("--g", "g", "second scalar function for product suites");
    add_keyed("--eta", "eta", "difference | eta1 | eta2 | eta3");
    add_keyed("--set", "set", "auto | whole | tu | vw | signed");
    add_keyed("--lo", "lo", "spectrum interval lower bound");
    add_keyed("--hi", "hi", "spectrum interval upper bound");
    add_keyed("--dim", "dims", "comma-separated dimensions cycled over instances");
    add_keyed("--trials", "trials", "number of instances");
    add_keyed("--trial-offset", "trial-offset", "global id of the first instance");
    add_keyed("--seed", "seed", "master seed");
    add_keyed("--t-grid", "t-grid", "points on the [0,1] parameter grid");
    add_keyed("--k", "k", "comma-separated subdivision bases");
    add_keyed("--p", "p", "comma-separated subdivision exponents");
    add_keyed("--a", "a", "trapezoid left parameter in [0,1)");
    add_keyed("--b", "b", "trapezoid right parameter in (a,1]");
    add_keyed("--unit-vectors", "unit-vectors", "unit vectors per instance");
    add_keyed("--tol", "tol", "relative tolerance for Loewner comparisons");
    add_keyed("--slack-tol", "slack-tol", "absolute slack tolerance for scalar bounds");
    add_keyed("--expected", "expected", "pass | fail");
    add_keyed("--report", "report", "report file path (default stdout)");
    add_keyed("--format", "format", "table | machine");
    add_keyed("--A", "A", "fixed first operand, matrix json file");
    add_keyed("--B", "B", "fixed second operand, matrix json file");
    add_keyed("--panels", "panels", "quadrature panels");
    add_keyed("--points", "points", "quadrature points per panel");
    add_keyed("--quad-tol", "quad-tol", "quadrature refinement tolerance");

    bool allow_signed = false;
    app.add_flag("--allow-signed", allow_signed,
                 "evaluate nonnegativity-based bounds for signed functions, logging verdicts");
    bool serial = false;
    app.add_flag("--serial", serial, "single-threaded instance loop");

    CLI11_PARSE(app, argc, argv);

    try {
        ophh::CampaignConfig cfg;
        if (!config_path.empty()) cfg = ophh::parse_config_file(config_path, cfg);
        for (const auto& [key, value] : overrides) ophh::apply_config_entry(cfg, key, value);
        if (allow_signed) cfg.allow_signed = true;
        if (serial) cfg.parallel = false;

        const ophh::CampaignResult result = ophh::run_campaign(cfg);
        ophh::write_report_file(result);
        if (!result.config.report_path.empty()) {
            const ophh::CampaignSummary& sm = result.summary;
            std::cout << "instances " << sm.instances << "  pass " << sm.pass_count << "  fail "
                      << sm.fail_count << "  logged " << sm.logged_count << "  error "
                      << sm.error_count << "  expected " << result.config.expected
                      << (ophh::expectation_met(result) ? " (met)" : " (violated)") << "\n";
        }
        return ophh::campaign_exit_code(result);
    } catch (const ophh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
