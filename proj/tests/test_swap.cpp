#include <cmath>
#include <limits>

#include "doctest.h"
#include "lgt/swap.hpp"
#include "lgt/verify.hpp"

using namespace lgt;

namespace {

int plaq(const CellComplex& cx, Coord x, int mu, int nu) { return cx.plaquette_index(cx.vertex_index(x), mu, nu); }

}  // namespace

TEST_CASE("theta split and merge are inverse on two-corner supports") {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const CellComplex cx(Box::cube(3, 2));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const SplitContext ctx(space);
    const CellSet allowed = set_union(plaquettes_in_box(cx, Box{3, {0, 0, 0, 0}, {1, 1, 1, 0}}),
                                      plaquettes_in_box(cx, Box{3, {1, 1, 1, 0}, {2, 2, 2, 0}}));
    const std::vector<Homomorphism> homs = solve_support_constraints(space, allowed);
    CHECK(homs.size() > 1);
    const CellSet P = set_union(allowed, {plaq(cx, {0, 0, 0, 0}, 0, 1), plaq(cx, {1, 1, 2, 0}, 0, 1)});
    for (const Homomorphism& psi : homs) {
        const CellSet S = set_union(space.support(psi), {plaq(cx, {0, 0, 0, 0}, 0, 1), plaq(cx, {1, 1, 2, 0}, 0, 1)});
        const Theta th(ctx, S);
        const std::vector<Homomorphism> parts = th.split(psi);
        CHECK(th.merge(parts) == psi);
        // each part lives on its own knot
        for (std::size_t j = 0; j < parts.size(); ++j)
            CHECK(set_subset(space.support(parts[j]), th.decomposition().knots[j]));
    }
    (void)P;
}

TEST_CASE("theta rejects homomorphisms outside P") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(3, 2));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const SplitContext ctx(space);
    EdgeConfig sigma(cx.edge_count(), 0);
    sigma[0] = 1;
    const Homomorphism psi = space.psi_of_config(sigma);
    const Theta th(ctx, {plaq(cx, {1, 1, 2, 0}, 0, 1)});
    CHECK_THROWS_AS(th.split(psi), std::domain_error);
}

TEST_CASE("split_pair separates a gauge-fixed configuration") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(3, 2));
    const Box b{3, {0, 0, 0, 0}, {1, 1, 1, 0}};
    EdgeConfig sigma(cx.edge_count(), 0);
    sigma[cx.edge_index(0, 0)] = 1;
    sigma[cx.edge_index(cx.vertex_index({1, 2, 2, 0}), 0)] = 1;
    const SplitConfigs parts = split_pair(cx, gr.group, sigma, b);
    for (int e = 0; e < cx.edge_count(); ++e) CHECK(gr.group.mul(parts.inner[e], parts.outer[e]) == sigma[e]);
    CHECK(parts.inner[cx.edge_index(0, 0)] == 1);
    EdgeConfig bad(cx.edge_count(), 0);
    bad[cx.edge_index(cx.vertex_index({1, 0, 0, 0}), 1)] = 1;  // on the face x = 1
    CHECK_THROWS(split_pair(cx, gr.group, bad, b));
}

TEST_CASE("swap suite passes and a corrupted split is caught with a witness") {
    const std::vector<CheckRow> good = check_swap();
    CHECK(all_pass(good));
    VerifyOptions opt;
    opt.inject_fault = true;
    const std::vector<CheckRow> bad = check_swap(opt);
    CHECK_FALSE(all_pass(bad));
    bool involution_caught = false;
    for (const CheckRow& r : bad)
        if (!r.pass) {
            CHECK(r.witness >= 0);
            if (r.check == "swap_involution") involution_caught = true;
        }
    CHECK(involution_caught);
}

TEST_CASE("covariance bound arithmetic") {
    CHECK(covariance_bound(1, 2, 0.25) == 1.0);
    CHECK_THROWS(covariance_bound(-1, 1, 0.5));
    CHECK_THROWS(covariance_bound(1, 1, 1.5));
}

TEST_CASE("polymer bound at P = P0 has no decay factor") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(3, 1));
    const GibbsSpec spec(cx, gr.group, gr.rep, 3.0);
    CHECK(phi2_upper(spec, {0, 1}, {0, 1}) == doctest::Approx(std::pow(4.0, 2) * std::pow(2.0, 4)));
    CHECK(phi2_upper(spec, {}, {0}) == doctest::Approx(4 * 4 * std::exp(-6.0)));
}

TEST_CASE("polymer function on one cube against a direct double sum") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(3, 1));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const GibbsSpec spec(cx, gr.group, gr.rep, 1.0);
    const CellSet P{0, 1, 2, 3};
    const CellSet P0{1};
    double direct = 0;
    for (std::uint64_t i = 0; i < space.omega_size(); ++i)
        for (std::uint64_t j = 0; j < space.omega_size(); ++j) {
            const Homomorphism a = space.decode(i), b = space.decode(j);
            if (set_union(set_union(space.support(a), space.support(b)), P0) == P)
                direct += nu_weight(space, spec, a) * nu_weight(space, spec, b);
        }
    CHECK(phi2(space, spec, P0, P) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(knot_probability_bound(space, spec, P0, P) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("closed-form percolation and covariance bounds") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const PeierlsBounds b = percolation_and_theorem_bounds(gr.group, gr.rep, 60, 1, 1, 1);
    CHECK(b.log_p_out == doctest::Approx(std::log(5.12e50)).epsilon(1e-14));
    CHECK(b.p_out == doctest::Approx(5.12e50).epsilon(1e-12));
    CHECK(b.covariance == doctest::Approx(1.024e51).epsilon(1e-12));
    CHECK_FALSE(b.below_threshold);
    // c e^{-beta delta} >= 1 below threshold: the geometric tail diverges
    const PeierlsBounds low = percolation_and_theorem_bounds(gr.group, gr.rep, 1.2, 1, 1, 3);
    CHECK(low.below_threshold);
    CHECK(low.log_series == std::numeric_limits<double>::infinity());
    const PeierlsBounds high = percolation_and_theorem_bounds(gr.group, gr.rep, 100, 1, 1, 3);
    const double log_c = std::log(1.6e25);
    const double log_r = log_c - 200;
    CHECK(high.log_series == doctest::Approx(2 * log_c + 2 * log_r - std::log1p(-std::exp(log_r))));
    CHECK_THROWS(percolation_and_theorem_bounds(gr.group, gr.rep, 60, 1, 1, 0));
}
