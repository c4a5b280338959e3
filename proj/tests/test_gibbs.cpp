#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lgt/gibbs.hpp"

using namespace lgt;

TEST_CASE("single plaquette partition function") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(2, 1));
    for (double beta : {0.0, 0.4, 1.3}) {
        const GibbsSpec spec(cx, gr.group, gr.rep, beta);
        const ExactDistribution mu = enumerate_mu(spec);
        // 16 configurations, half with plaquette -1 costing gap 2
        CHECK(mu.partition == doctest::Approx(8 + 8 * std::exp(-2 * beta)).epsilon(1e-14));
        double total = 0;
        for (double p : mu.prob) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("beta zero is uniform and weights match the action") {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const CellComplex cx(Box::cube(2, 2));
    const ExactDistribution flat = enumerate_mu(GibbsSpec(cx, gr.group, gr.rep, 0.0));
    for (double p : flat.prob) CHECK(p == doctest::Approx(1.0 / flat.prob.size()));
    const GibbsSpec spec(cx, gr.group, gr.rep, 0.9);
    const ExactDistribution mu = enumerate_mu(spec);
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t i = rng() % mu.prob.size();
        CHECK(mu.prob[i] * mu.partition == doctest::Approx(weight(spec, mu.config(i))).epsilon(1e-12));
        CHECK(encode_config(mu.config(i), 3) == i);
    }
}

TEST_CASE("heat bath conditional matches ratios of full weights") {
    const GroupWithRep gr = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 1));
    const GibbsSpec spec(cx, gr.group, gr.rep, 0.6);
    HeatBath hb(spec, 1);
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        EdgeConfig sigma(cx.edge_count());
        for (auto& s : sigma) s = static_cast<Element>(rng() % 6);
        const int e = static_cast<int>(rng() % cx.edge_count());
        const std::vector<double> cond = hb.conditional(sigma, e);
        std::vector<double> direct(6);
        double z = 0;
        for (int g = 0; g < 6; ++g) {
            EdgeConfig s = sigma;
            s[e] = g;
            z += direct[g] = weight(spec, s);
        }
        for (int g = 0; g < 6; ++g) CHECK(cond[g] == doctest::Approx(direct[g] / z).epsilon(1e-12));
    }
}

TEST_CASE("sampler reproduces the exact plaquette law") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(2, 2));
    const GibbsSpec spec(cx, gr.group, gr.rep, 0.7);
    const ExactDistribution mu = enumerate_mu(spec);
    double exact = 0;
    for (std::uint64_t i = 0; i < mu.prob.size(); ++i)
        exact += mu.prob[i] * std::real(gr.rep.chi(plaquette_value(cx, gr.group, mu.config(i), 0)));
    const int n = 40000;
    double mean = 0;
    mcmc_chain(spec, n, 42, 0, 100, [&](const EdgeConfig& s) {
        mean += std::real(gr.rep.chi(plaquette_value(cx, gr.group, s, 0)));
    });
    mean /= n;
    // plaquettes decorrelate in one sweep here; 5 sigma of the iid error
    CHECK(std::abs(mean - exact) < 5 * std::sqrt((1 - exact * exact) / n));
}

TEST_CASE("chains are reproducible per (seed, stream)") {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const CellComplex cx(Box::cube(2, 2));
    const GibbsSpec spec(cx, gr.group, gr.rep, 0.5);
    std::vector<EdgeConfig> a, b, c;
    mcmc_chain(spec, 20, 3, 1, 5, [&](const EdgeConfig& s) { a.push_back(s); });
    mcmc_chain(spec, 20, 3, 1, 5, [&](const EdgeConfig& s) { b.push_back(s); });
    mcmc_chain(spec, 20, 3, 2, 5, [&](const EdgeConfig& s) { c.push_back(s); });
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("covariance estimator") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    std::vector<double> x(20000), y(20000), u(20000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = z(rng);
        u[i] = z(rng);
        y[i] = 0.5 * x[i] + u[i];
    }
    const CovEstimate dep = estimate_cov(x, y, 1000);
    CHECK(std::abs(dep.estimate - 0.5) < 5 * dep.std_error);
    CHECK(dep.std_error > 0);
    const CovEstimate ind = estimate_cov(x, u, 1000);
    CHECK(std::abs(ind.estimate) < 5 * ind.std_error);
    std::vector<double> ones(x.size(), 1.0);
    CHECK(estimate_cov(x, ones, 1000).estimate == doctest::Approx(0.0));
    CHECK_THROWS(estimate_cov(x, y, 5000));

    // weighted form is an exact expectation: two-point law
    const std::vector<double> a{1, -1}, b{1, -1}, w{0.25, 0.75};
    std::vector<double> aa, bb, ww;
    for (int k = 0; k < 10; ++k) {
        aa.insert(aa.end(), a.begin(), a.end());
        bb.insert(bb.end(), b.begin(), b.end());
        ww.insert(ww.end(), w.begin(), w.end());
    }
    // E[ab] - E[a]E[b] = 1 - 0.25
    CHECK(estimate_cov(aa, bb, 2, ww).estimate == doctest::Approx(0.75));
}

TEST_CASE("binary sample stream round trip") {
    StreamHeader h{Box::cube(3, 2), "cyclic2", 1.25, 77, 54};
    std::stringstream ss;
    write_stream_header(ss, h);
    EdgeConfig s(54);
    for (int e = 0; e < 54; ++e) s[e] = e % 2;
    write_stream_sample(ss, s);
    const StreamHeader back = read_stream_header(ss);
    CHECK(back == h);
    EdgeConfig got;
    CHECK(read_stream_sample(ss, back.edges, got));
    CHECK(got == s);
    CHECK_FALSE(read_stream_sample(ss, back.edges, got));
}
