#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgt/experiment.hpp"

namespace lgt {

struct VerifyOptions {
    std::uint64_t cap = std::uint64_t{1} << 24;
    bool inject_fault = false;  // corrupts the knot split so the swap checks must fail
};

// Exact checks on fixed small instances. Each returns one row per (instance, check).

// Every homomorphism on [0,2]^2 Z2 has |G|^(V-1) preimages.
std::vector<CheckRow> check_fiber_counts(const VerifyOptions& opt = {});
// Total variation between the pushforward of mu and nu.
std::vector<CheckRow> check_pushforward(const VerifyOptions& opt = {});
// Class-function expectations on plaquette loops agree between mu and nu.
std::vector<CheckRow> check_observable_transfer(const VerifyOptions& opt = {});
// Swap involution, support, weight and exchange identity, plus the covariance bound.
std::vector<CheckRow> check_swap(const VerifyOptions& opt = {});
// Polymer factorization, polymer bound and knot-size floor.
std::vector<CheckRow> check_peierls(const VerifyOptions& opt = {});
// Threshold and closed-form bound arithmetic.
std::vector<CheckRow> check_bound_formulas(const VerifyOptions& opt = {});
std::vector<CheckRow> check_higgs_large(const VerifyOptions& opt = {});
std::vector<CheckRow> check_higgs_small(const VerifyOptions& opt = {});

// Suites: gauge, swap, peierls, bounds, higgs_large, higgs_small. Throws ConfigError on unknown names.
std::vector<CheckRow> run_suite(const std::string& name, const VerifyOptions& opt = {});
std::vector<std::string> suite_names();

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace lgt
