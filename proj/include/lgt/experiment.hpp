#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgt/group.hpp"
#include "lgt/lattice.hpp"

namespace lgt {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DecaySettings {
    std::vector<int> L{1, 2, 3, 4, 5};
    int chains = 8;
    int sweeps = 200000;
    int burn_in = 1000;
    int batches_per_chain = 20;
    int axis = 0;       // separation direction
    int mu = 1, nu = 2; // plane of both plaquettes
    Coord anchor{1, 3, 3, 0};
    std::string observable = "wilson";  // or "constant" for a constant second observable
};

struct BoundSettings {
    int b1_size = 1;
    int b2_size = 1;
    std::vector<int> L{1, 2, 5, 11};
    double f1_sup = 1;
    double f2_sup = 1;
};

struct ExperimentConfig {
    Box lattice = Box::cube(3, 7);
    std::string group_family = "cyclic";
    int group_param = 2;
    std::vector<double> betas{1.2};
    std::optional<double> kappa;
    int higgs_h = 2;
    DecaySettings decay;
    BoundSettings bounds;
    std::vector<std::string> suites{"gauge", "swap", "peierls", "bounds"};
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t enumeration_cap = std::uint64_t{1} << 24;
    std::string out_dir = "out";
    bool inject_fault = false;

    double beta() const { return betas.front(); }
};

// Throws ConfigError on malformed or out-of-range input.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct DecayRow {
    int L = 0;
    double cov = 0;
    double std_error = 0;
    std::size_t n = 0;
    double beta = 0;
};

struct ExpFit {
    bool ok = false;
    double rate = 0;
    double intercept = 0;
    double r2 = 0;
    std::vector<int> excluded;  // L values dropped for zero covariance
    std::string reason;
};

// Least squares of log|cov| against L.
ExpFit fit_exponential(const std::vector<DecayRow>& rows);

// |cov| never rises by more than k combined standard errors between consecutive rows.
bool nonincreasing_within(const std::vector<DecayRow>& rows, double k);

std::vector<DecayRow> run_decay(const ExperimentConfig& cfg);

std::string decay_csv(const std::vector<DecayRow>& rows);
std::string decay_svg(const std::vector<DecayRow>& rows, double reference_slope);

struct CheckRow {
    std::string instance;
    std::string check;
    bool pass = false;
    long long witness = -1;  // index of the first failing item, -1 when none
    std::string value;
};

std::string checks_csv(const std::vector<CheckRow>& rows);

void emit_decay(const std::vector<DecayRow>& rows, const std::filesystem::path& dir, double reference_slope);
void emit_checks(const std::vector<CheckRow>& checks, const std::filesystem::path& dir);
// decay.csv, decay.svg and checks.csv under dir.
void emit_report(const std::vector<DecayRow>& rows, const std::vector<CheckRow>& checks,
                 const std::filesystem::path& dir, double reference_slope);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lgt
