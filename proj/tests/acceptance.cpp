// Runs acceptance criteria 1-10 and prints one pass/fail line each.
// Exit code 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lgt/experiment.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome from_rows(const std::vector<CheckRow>& rows, const std::function<bool(const std::string&)>& keep) {
    Outcome o;
    int n = 0;
    for (const CheckRow& r : rows) {
        if (!keep(r.check)) continue;
        ++n;
        if (!r.pass) {
            o.pass = false;
            if (o.detail.empty()) o.detail = r.instance + " " + r.check + " witness=" + std::to_string(r.witness) + " " + r.value;
        }
    }
    if (n == 0) {
        o.pass = false;
        o.detail = "no checks ran";
    }
    if (o.pass) o.detail = std::to_string(n) + " checks";
    return o;
}

bool starts(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

Outcome decay() {
    const ExperimentConfig cfg;
    const std::vector<DecayRow> rows = run_decay(cfg);
    const ExpFit fit = fit_exponential(rows);
    Outcome o;
    const bool mono = nonincreasing_within(rows, 2.0);
    const bool fit_ok = fit.ok && fit.rate < 0 && fit.r2 >= 0.9;
    o.pass = mono && fit_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "nonincreasing_2se=%s rate=%.4g r2=%.4g", mono ? "yes" : "no", fit.rate, fit.r2);
    o.detail = buf;
    if (!fit.ok) o.detail += " no fit: " + fit.reason;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "fiber count", [&] { return from_rows(check_fiber_counts(), [](auto& c) { return c == "fiber_count"; }); }},
        {2, "pushforward law", [&] { return from_rows(check_pushforward(), [](auto& c) { return c == "pushforward_tv"; }); }},
        {3, "observable transfer",
         [&] { return from_rows(check_observable_transfer(), [](auto& c) { return c == "observable_transfer"; }); }},
        {4, "swap suite",
         [&] {
             return from_rows(check_swap(), [](auto& c) { return c == "theta_roundtrip" || starts(c, "swap_"); });
         }},
        {5, "covariance bound", [&] { return from_rows(check_swap(), [](auto& c) { return c == "cov_bound"; }); }},
        {6, "peierls suite",
         [&] { return from_rows(check_peierls(), [](auto& c) { return starts(c, "phi2_") || c == "knot_floor"; }); }},
        {7, "empirical decay", decay},
        {8, "bound calculators",
         [&] {
             return from_rows(check_bound_formulas(), [](auto& c) { return c == "threshold" || c == "closed_forms"; });
         }},
        {9, "higgs large kappa",
         [&] { return from_rows(check_higgs_large(), [](auto& c) { return starts(c, "higgs_large_"); }); }},
        {10, "higgs small kappa",
         [&] { return from_rows(check_higgs_small(), [](auto& c) { return starts(c, "higgs_small_"); }); }},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %2d %-20s %s %.1fs %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
