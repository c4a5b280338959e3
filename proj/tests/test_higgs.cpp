#include <cmath>
#include <random>

#include "doctest.h"
#include "lgt/higgs.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

TEST_CASE("quotients") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const HiggsQuotient q = quotient_by_Ht(s3.group, s3.rep, 2);
    CHECK(q.ht_order == 1);
    CHECK(q.order == 2);
    CHECK(quotient_key_property(s3.group, s3.rep, q));
    const GroupWithRep z2 = builtin_group("cyclic", 2);
    CHECK_THROWS_AS(quotient_by_Ht(z2.group, z2.rep, 2), DegenerateQuotient);
    const GroupWithRep z4 = builtin_group("cyclic", 4);
    // rho(g) in {1, i, -1, -i}: H = Z4 is all scalar
    CHECK_THROWS_AS(quotient_by_Ht(z4.group, z4.rep, 4), DegenerateQuotient);
    const GroupWithRep z3 = builtin_group("cyclic", 3);
    CHECK(quotient_by_Ht(z3.group, z3.rep, 2).order == 2);
}

TEST_CASE("hamiltonian: vacuum, one flipped charge, global shift") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 2));
    const HiggsModel m(cx, s3.group, s3.rep, quotient_by_Ht(s3.group, s3.rep, 2), 0.8, 1.5);
    HiggsConfig c = m.trivial();
    CHECK(higgs_hamiltonian(m, c) == 0.0);
    CHECK(excited_edges(m, c).empty());
    const int v = cx.vertex_index({1, 1, 1, 0});
    c.phi[v] = 1;
    // each incident edge contributes kappa (Re[-d] - d)
    const double deg = static_cast<double>(cx.edges_of_vertex(v).size());
    CHECK(higgs_hamiltonian(m, c) == doctest::Approx(1.5 * (-4.0) * deg));
    CHECK(excited_edges(m, c) == make_set(cx.edges_of_vertex(v)));
    HiggsConfig shifted = c;
    for (int& f : shifted.phi) f = 1 - f;
    CHECK(higgs_hamiltonian(m, shifted) == doctest::Approx(higgs_hamiltonian(m, c)));
    std::mt19937 rng(2);
    for (int t = 0; t < 20; ++t) {
        HiggsConfig r = m.trivial();
        for (auto& s : r.sigma) s = static_cast<Element>(rng() % 6);
        for (auto& f : r.phi) f = static_cast<int>(rng() % 2);
        CHECK(higgs_hamiltonian(m, r) < 0);
    }
}

TEST_CASE("single nontrivial edge: support is its star") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 2));
    const HiggsModel m(cx, s3.group, s3.rep, quotient_by_Ht(s3.group, s3.rep, 2), 1, 1);
    HiggsConfig c = m.trivial();
    c.sigma[5] = 3;
    CHECK(higgs_support(m, c) == make_set(cx.plaquettes_of_edge(5)));
}

TEST_CASE("phase boundaries and flips") {
    const CellComplex cx(Box::cube(3, 4));
    std::vector<int> phi(cx.vertex_count(), 0);
    CHECK(phase_boundaries(cx, phi).empty());
    // island: the 2x2x2 block [1,2]^3 flipped
    for (int v = 0; v < cx.vertex_count(); ++v) {
        const Coord& x = cx.coord(v);
        if (x[0] >= 1 && x[0] <= 2 && x[1] >= 1 && x[1] <= 2 && x[2] >= 1 && x[2] <= 2) phi[v] = 1;
    }
    const auto b = phase_boundaries(cx, phi);
    REQUIRE(b.size() == 1);
    const std::vector<int> chi = flip_map(cx, phi, b[0]);
    std::vector<int> cleared(phi.size());
    for (std::size_t v = 0; v < phi.size(); ++v) cleared[v] = phi[v] ^ chi[v];
    CHECK(phase_boundaries(cx, cleared).empty());
    CHECK(chi[0] == 0);
    CHECK_THROWS(flip_map(cx, phi, {b[0].front()}));
}

TEST_CASE("nested islands: removing the outer boundary flips the enclosed region") {
    const CellComplex cx(Box::cube(2, 8));
    std::vector<int> phi(cx.vertex_count(), 0);
    for (int v = 0; v < cx.vertex_count(); ++v) {
        const Coord& x = cx.coord(v);
        const int r = std::max(std::abs(x[0] - 4), std::abs(x[1] - 4));
        phi[v] = r <= 2 ? 1 : 0;
        if (r == 0) phi[v] = 0;
    }
    const auto b = phase_boundaries(cx, phi);
    REQUIRE(b.size() == 2);
    // outer boundary is the larger one
    const CellSet outer = b[0].size() > b[1].size() ? b[0] : b[1];
    const CellSet inner = b[0].size() > b[1].size() ? b[1] : b[0];
    const std::vector<int> chi = flip_map(cx, phi, outer);
    std::vector<int> next(phi.size());
    for (std::size_t v = 0; v < phi.size(); ++v) next[v] = phi[v] ^ chi[v];
    const auto left = phase_boundaries(cx, next);
    REQUIRE(left.size() == 1);
    CHECK(left[0] == inner);
    for (int v = 0; v < cx.vertex_count(); ++v) {
        const Coord& x = cx.coord(v);
        const int r = std::max(std::abs(x[0] - 4), std::abs(x[1] - 4));
        CHECK(chi[v] == (r <= 2 ? 1 : 0));
    }
}

TEST_CASE("large-kappa constant for S3 with Z2 quotient") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 1));
    const HiggsModel m(cx, s3.group, s3.rep, quotient_by_Ht(s3.group, s3.rep, 2), 1, 2);
    // best non-identity pair: a = -1 against chi = -1 gives Re[1 - 2]
    CHECK(large_kappa_constant(m) == doctest::Approx(-2.0));
    CHECK(higgs_phi2_large_bound(m, 3, 3) ==
          doctest::Approx(std::pow(4.0, 3) * std::pow(6.0, 24) * std::pow(2.0, 24)).epsilon(1e-12));
}

TEST_CASE("current expansion") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    CHECK(c_constant(s3.rep) == 5.0);
    for (double x : {0.1, 1.0, 5.0, 10.0}) {
        CHECK(truncated_current_sum(x, 40) == doctest::Approx(std::exp(x)).epsilon(1e-12));
        for (int k = 0; k < 12; ++k) {
            const double gap = truncated_current_sum(x, k + 1) - truncated_current_sum(x, k);
            CHECK(gap <= current_tail_bound(x, k) * (1 + 1e-12));
        }
    }
    const CellComplex cx(Box::cube(2, 1));
    const HiggsModel m(cx, s3.group, s3.rep, quotient_by_Ht(s3.group, s3.rep, 2), 1, 0.3);
    const HiggsConfig c = m.trivial();
    CHECK(current_weight(m, c.sigma, c.phi, CurrentField(cx.edge_count(), 0)) == 1.0);
    CurrentField I(cx.edge_count(), 0);
    I[0] = 2;
    // (kappa (2 d + c))^2 / 2!
    CHECK(current_weight(m, c.sigma, c.phi, I) == doctest::Approx(std::pow(0.3 * 9, 2) / 2));
    CHECK(activated_edges(I) == CellSet{0});
    CHECK(activated_vertices(cx, I).size() == 2);
}

TEST_CASE("small-kappa constant for S3 with Z2 quotient at beta 3, kappa 0.01") {
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 1));
    const HiggsModel m(cx, s3.group, s3.rep, quotient_by_Ht(s3.group, s3.rep, 2), 3, 0.01);
    // gauge: exp(3 * 2 (0 - 2)); link: kappa/24 exp(2 * 1 + 5)
    const double expect = std::max(std::exp(-12.0), 0.01 / 24 * std::exp(7.0));
    const SmallKappaBound b = higgs_phi2_small_bound(m, 1, 1);
    CHECK(b.constant == doctest::Approx(expect).epsilon(1e-14));
    CHECK_FALSE(b.vacuous);
    CHECK(b.value == doctest::Approx(16.0 * 36 * 256).epsilon(1e-12));
}

TEST_CASE("trivial reduced configuration has weight one") {
    const GroupWithRep z3 = builtin_group("cyclic", 3);
    const CellComplex cx(Box::cube(2, 2));
    const HomSpace space(cx, z3.group, spanning_tree(cx));
    const HiggsModel m(cx, z3.group, z3.rep, quotient_by_Ht(z3.group, z3.rep, 2), 0.5, 0.3);
    const ReducedConfig rc{space.trivial(), std::vector<int>(cx.vertex_count(), 0), CurrentField(cx.edge_count(), 0)};
    CHECK(reduced_weight(space, m, rc) == doctest::Approx(1.0));
    CHECK(reduced_weight(space, m, rc, ReducedRoute::Fiber) == doctest::Approx(1.0));
    CHECK(reduced_support(space, rc).empty());
}

TEST_CASE("higgs suites pass") {
    CHECK(all_pass(check_higgs_large()));
    CHECK(all_pass(check_higgs_small()));
}
