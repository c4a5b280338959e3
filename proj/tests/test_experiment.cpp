#include <cmath>
#include <random>

#include "doctest.h"
#include "lgt/experiment.hpp"

using namespace lgt;

namespace {

std::vector<DecayRow> rows_of(const std::vector<double>& cov) {
    std::vector<DecayRow> r;
    for (std::size_t i = 0; i < cov.size(); ++i) r.push_back({static_cast<int>(i + 1), cov[i], 0.0, 100, 1.0});
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("fit recovers an exact exponential") {
    std::vector<double> cov;
    for (int L = 1; L <= 5; ++L) cov.push_back(std::exp(-2.0 * L));
    const ExpFit f = fit_exponential(rows_of(cov));
    REQUIRE(f.ok);
    CHECK(f.rate == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(f.intercept == doctest::Approx(0.0).scale(1));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.excluded.empty());
}

TEST_CASE("fit excludes zero rows and flags them") {
    const ExpFit f = fit_exponential(rows_of({std::exp(-1.0), 0.0, std::exp(-3.0), std::exp(-4.0)}));
    REQUIRE(f.ok);
    CHECK(f.excluded == std::vector<int>{2});
    CHECK(f.rate == doctest::Approx(-1.0));
    const ExpFit none = fit_exponential(rows_of({0.0, 0.0, 0.0, 1.0}));
    CHECK_FALSE(none.ok);
    CHECK_FALSE(none.reason.empty());
}

TEST_CASE("fit on noisy data recovers the rate") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> cov;
    for (int L = 1; L <= 8; ++L) cov.push_back(std::exp(-1.0 * L) * (1 + noise(rng)));
    const ExpFit f = fit_exponential(rows_of(cov));
    REQUIRE(f.ok);
    CHECK(std::abs(f.rate + 1.0) < 0.05);
}

TEST_CASE("negative covariances are fit by magnitude") {
    std::vector<double> cov;
    for (int L = 1; L <= 4; ++L) cov.push_back(-std::exp(-0.5 * L));
    const ExpFit f = fit_exponential(rows_of(cov));
    REQUIRE(f.ok);
    CHECK(f.rate == doctest::Approx(-0.5));
}

TEST_CASE("nonincreasing within k standard errors") {
    std::vector<DecayRow> r = rows_of({1.0, 0.5, 0.6});
    CHECK_FALSE(nonincreasing_within(r, 2.0));
    r[1].std_error = r[2].std_error = 0.05;
    CHECK(nonincreasing_within(r, 2.0));
    CHECK_FALSE(nonincreasing_within(r, 0.5));
    CHECK(nonincreasing_within(rows_of({-1.0, 0.5, -0.1}), 0.0));
}

TEST_CASE("csv shapes") {
    CHECK(decay_csv({}) == "L,cov,stderr,n,beta\n");
    CHECK(count_lines(decay_csv(rows_of({1, 2, 3}))) == 4);
    CHECK(decay_csv(rows_of({0.25})) == "L,cov,stderr,n,beta\n1,0.25,0,100,1\n");
    const std::string c = checks_csv({{"a", "b", true, -1, "x"}, {"c", "d", false, 7, ""}});
    CHECK(c == "instance,check,status,witness,value\na,b,pass,-1,x\nc,d,fail,7,\n");
}

TEST_CASE("svg is deterministic and draws axes when empty") {
    const std::string empty = decay_svg({}, -1.2);
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("stroke=\"black\"") != std::string::npos);
    CHECK(empty.find("circle") == std::string::npos);
    const auto r = rows_of({0.1, 0.01, 0.001});
    CHECK(decay_svg(r, -1.2) == decay_svg(r, -1.2));
    CHECK(decay_svg(r, -1.2) != decay_svg(r, -2.4));
}

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config(
        R"({"lattice":{"dim":2,"side":3},"group":{"family":"cyclic","param":3},"betas":[0.5,1],"seed":9,
            "decay":{"L":[1,2],"chains":2,"sweeps":100,"batches_per_chain":10,"plane":[0,1],"anchor":[0,0]}})");
    CHECK(c.lattice.dim == 2);
    CHECK(c.lattice.hi[0] == 3);
    CHECK(c.group_param == 3);
    CHECK(c.betas.size() == 2);
    CHECK(c.seed == 9);
    CHECK(c.decay.chains == 2);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"beta":-1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"beta":"x"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"group":{"family":"cyclic","param":0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"group":{"family":"nope","param":2}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"workers":0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"decay":{"sweeps":101,"batches_per_chain":10}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"decay":{"chains":1,"batches_per_chain":5,"sweeps":100}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"decay":{"observable":"other"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"lattice":{"dim":3,"lo":[0,0,0],"hi":[1,0,1]}})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("decay run: constant observable and worker-count determinism") {
    ExperimentConfig c = parse_config(
        R"({"lattice":{"dim":3,"side":3},"beta":0.8,"decay":{"L":[1,2],"chains":4,"sweeps":200,
            "burn_in":10,"batches_per_chain":5,"axis":0,"plane":[1,2],"anchor":[0,1,1]}})");
    c.decay.observable = "constant";
    for (const DecayRow& r : run_decay(c)) {
        CHECK(std::abs(r.cov) < 1e-12);
        CHECK(r.n == 800);
        CHECK(r.std_error >= 0);
    }
    c.decay.observable = "wilson";
    c.workers = 1;
    const std::string one = decay_csv(run_decay(c));
    c.workers = 2;
    CHECK(decay_csv(run_decay(c)) == one);
    c.seed = 2;
    CHECK(decay_csv(run_decay(c)) != one);
    c.decay.L = {5};
    CHECK_THROWS_AS(run_decay(c), ConfigError);
}
