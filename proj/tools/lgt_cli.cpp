// Command-line driver: verify, enumerate, decay, bounds, higgs.
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lgt/experiment.hpp"
#include "lgt/gibbs.hpp"
#include "lgt/homomorphism.hpp"
#include "lgt/swap.hpp"
#include "lgt/verify.hpp"

namespace {

using namespace lgt;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int report(const std::vector<CheckRow>& rows, const std::filesystem::path& out) {
    emit_checks(rows, out);
    for (const CheckRow& r : rows)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.instance << " " << r.check << " witness=" << r.witness << " "
                  << r.value << "\n";
    return all_pass(rows) ? 0 : 1;
}

int cmd_verify(const ExperimentConfig& cfg, const std::vector<std::string>& suites) {
    VerifyOptions opt{cfg.enumeration_cap, cfg.inject_fault};
    std::vector<CheckRow> rows;
    for (const std::string& s : suites.empty() ? cfg.suites : suites) {
        const std::vector<CheckRow> r = run_suite(s, opt);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return report(rows, cfg.out_dir);
}

int cmd_enumerate(const ExperimentConfig& cfg) {
    const GroupWithRep gr = builtin_group(cfg.group_family, cfg.group_param);
    const CellComplex cx(cfg.lattice);
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    std::string csv = "beta,configs,homs,log_partition,tv\n";
    std::vector<CheckRow> rows;
    for (double beta : cfg.betas) {
        const GibbsSpec spec(cx, gr.group, gr.rep, beta);
        ExactDistribution mu;
        NuDistribution nu;
        try {
            mu = enumerate_mu(spec, cfg.enumeration_cap);
            nu = enumerate_nu(space, spec, cfg.enumeration_cap);
        } catch (const std::length_error& e) {
            throw ConfigError(std::string("enumeration cap exceeded: ") + e.what());
        }
        std::vector<double> push(nu.prob.size(), 0.0);
        for (std::uint64_t i = 0; i < mu.prob.size(); ++i) push[space.encode(space.psi_of_config(mu.config(i)))] += mu.prob[i];
        double tv = 0;
        for (std::size_t k = 0; k < push.size(); ++k) tv += std::abs(push[k] - nu.prob[k]);
        tv /= 2;
        csv += fmt(beta) + "," + std::to_string(mu.prob.size()) + "," + std::to_string(nu.prob.size()) + "," +
               fmt(std::log(mu.partition)) + "," + fmt(tv) + "\n";
        rows.push_back({cfg.lattice.str(), "pushforward_tv", tv < 1e-12, tv < 1e-12 ? -1 : 0, "tv=" + fmt(tv)});
    }
    write_text(std::filesystem::path(cfg.out_dir) / "enumerate.csv", csv);
    return report(rows, cfg.out_dir);
}

int cmd_decay(const ExperimentConfig& cfg) {
    if (cfg.decay.L.size() < 3) throw ConfigError("decay needs at least 3 L values");
    const GroupWithRep gr = builtin_group(cfg.group_family, cfg.group_param);
    const double slope = -0.5 * cfg.beta() * delta_G(gr.group, gr.rep);
    const std::vector<DecayRow> rows = run_decay(cfg);
    const ExpFit fit = fit_exponential(rows);
    emit_decay(rows, cfg.out_dir, slope);
    std::cout << decay_csv(rows);
    std::string fit_text;
    if (fit.ok)
        fit_text = "rate=" + fmt(fit.rate) + " intercept=" + fmt(fit.intercept) + " r2=" + fmt(fit.r2);
    else
        fit_text = "no fit: " + fit.reason;
    for (int L : fit.excluded) fit_text += " excluded_L=" + std::to_string(L);
    write_text(std::filesystem::path(cfg.out_dir) / "fit.txt", fit_text + "\n");
    std::cout << fit_text << "\n";
    std::vector<CheckRow> checks;
    const bool mono = nonincreasing_within(rows, 2.0);
    checks.push_back({"decay", "nonincreasing_2se", mono, mono ? -1 : 0, ""});
    const bool fit_ok = fit.ok && fit.rate < 0 && fit.r2 >= 0.9;
    checks.push_back({"decay", "fit_rate_negative_r2", fit_ok, fit_ok ? -1 : 0, fit_text});
    return report(checks, cfg.out_dir);
}

int cmd_bounds(const ExperimentConfig& cfg) {
    const GroupWithRep gr = builtin_group(cfg.group_family, cfg.group_param);
    const BoundSettings& b = cfg.bounds;
    std::string csv = "beta,L,below_threshold,log_p_out,log_covariance,log_series\n";
    for (double beta : cfg.betas)
        for (int L : b.L) {
            const PeierlsBounds r =
                percolation_and_theorem_bounds(gr.group, gr.rep, beta, b.b1_size, b.b2_size, L, b.f1_sup, b.f2_sup);
            csv += fmt(beta) + "," + std::to_string(L) + "," + (r.below_threshold ? "1" : "0") + "," + fmt(r.log_p_out) +
                   "," + fmt(r.log_covariance) + "," + fmt(r.log_series) + "\n";
        }
    write_text(std::filesystem::path(cfg.out_dir) / "bounds.csv", csv);
    std::cout << "beta_threshold=" << fmt(beta_threshold(gr.group, gr.rep)) << "\n" << csv;
    return report(check_bound_formulas(), cfg.out_dir);
}

int cmd_higgs(const ExperimentConfig& cfg) {
    VerifyOptions opt{cfg.enumeration_cap, cfg.inject_fault};
    std::vector<CheckRow> rows = check_higgs_large(opt);
    const std::vector<CheckRow> small = check_higgs_small(opt);
    rows.insert(rows.end(), small.begin(), small.end());
    return report(rows, cfg.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice gauge theory checks and experiments"};
    app.require_subcommand(1);
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "output directory");
    std::vector<std::string> suites;
    auto* verify = app.add_subcommand("verify", "exact verification suites");
    verify->add_option("--suite", suites, "suite name (repeatable)");
    auto* enumerate = app.add_subcommand("enumerate", "exact enumeration of the Gibbs and homomorphism laws");
    auto* decay = app.add_subcommand("decay", "covariance decay sweep");
    auto* bounds = app.add_subcommand("bounds", "closed-form bound calculators");
    auto* higgs = app.add_subcommand("higgs", "Higgs model checks");
    for (auto* sub : {verify, enumerate, decay, bounds, higgs}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (workers) cfg.workers = *workers;
        if (out) cfg.out_dir = *out;
        for (const std::string& s : suites) {
            const auto names = suite_names();
            if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("unknown suite: " + s);
        }
        if (*verify) return cmd_verify(cfg, suites);
        if (*enumerate) return cmd_enumerate(cfg);
        if (*decay) return cmd_decay(cfg);
        if (*bounds) return cmd_bounds(cfg);
        return cmd_higgs(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
