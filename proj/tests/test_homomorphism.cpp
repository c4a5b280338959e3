#include <random>

#include "doctest.h"
#include "lgt/gibbs.hpp"
#include "lgt/homomorphism.hpp"

using namespace lgt;

TEST_CASE("free reduction") {
    const GeneratorWord w{{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}};
    CHECK(free_reduce(w) == GeneratorWord{{2, 1}});
    CHECK(free_reduce(concat(w, inverse_word(w))).empty());
}

TEST_CASE("psi is gauge invariant and gauge fixing is a section") {
    for (const char* fam : {"cyclic", "symmetric"}) {
        const GroupWithRep gr = builtin_group(fam, 3);
        const CellComplex cx(Box::cube(3, 2));
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        std::mt19937 rng(3);
        for (int trial = 0; trial < 25; ++trial) {
            EdgeConfig sigma(cx.edge_count());
            for (auto& s : sigma) s = static_cast<Element>(rng() % gr.group.order());
            std::vector<Element> h(cx.vertex_count());
            for (auto& x : h) x = static_cast<Element>(rng() % gr.group.order());
            h[space.tree().root] = 0;
            const Homomorphism psi = space.psi_of_config(sigma);
            CHECK(space.psi_of_config(gauge_transform(cx, gr.group, sigma, h)) == psi);
            const EdgeConfig fixed = space.gauge_fix(psi);
            CHECK(space.psi_of_config(fixed) == psi);
            for (int e = 0; e < cx.edge_count(); ++e)
                if (space.tree().in_tree[e]) CHECK(fixed[e] == 0);
            // plaquette images are conjugate to plaquette values
            const std::vector<int> cls = class_index(gr.group);
            for (int p = 0; p < cx.plaquette_count(); ++p)
                CHECK(cls[space.plaquette_image(psi, p)] == cls[plaquette_value(cx, gr.group, sigma, p)]);
            CHECK(space.support(psi) == config_support(cx, gr.group, sigma));
        }
    }
}

TEST_CASE("encode and decode") {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const CellComplex cx(Box::cube(2, 2));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    CHECK(space.omega_size() == 81);
    for (std::uint64_t i = 0; i < 81; ++i) CHECK(space.encode(space.decode(i)) == i);
    CHECK_THROWS(space.omega_size(10));
}

TEST_CASE("support solver: linear and search paths agree with brute force") {
    const CellComplex cx(Box::cube(3, 1));
    for (int n : {2, 3}) {
        const GroupWithRep gr = builtin_group("cyclic", n);
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        for (const CellSet& allowed : {CellSet{}, CellSet{0, 1}, CellSet{0, 1, 2, 3}, CellSet{0, 1, 2, 3, 4, 5}}) {
            std::vector<Homomorphism> brute;
            for (std::uint64_t i = 0; i < space.omega_size(); ++i) {
                const Homomorphism psi = space.decode(i);
                if (set_subset(space.support(psi), allowed)) brute.push_back(psi);
            }
            std::sort(brute.begin(), brute.end());
            CHECK(solve_support_constraints(space, allowed) == brute);
            CHECK(solve_support_constraints(space, allowed, 1 << 22, SolverPath::Search) == brute);
        }
    }
    const GroupWithRep s3 = builtin_group("symmetric", 3);
    const HomSpace space(cx, s3.group, spanning_tree(cx));
    std::vector<Homomorphism> brute;
    const CellSet allowed{0, 1, 2};
    for (std::uint64_t i = 0; i < space.omega_size(); ++i)
        if (set_subset(space.support(space.decode(i)), allowed)) brute.push_back(space.decode(i));
    std::sort(brute.begin(), brute.end());
    CHECK(solve_support_constraints(space, allowed) == brute);
}

TEST_CASE("nu weight is the product of plaquette factors") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const CellComplex cx(Box::cube(2, 1));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const GibbsSpec spec(cx, gr.group, gr.rep, 0.8);
    CHECK(nu_weight(space, spec, space.trivial()) == 1.0);
    const NuDistribution nu = enumerate_nu(space, spec);
    // one plaquette, one generator: weights 1 and e^{-1.6}
    CHECK(nu.partition == doctest::Approx(1 + std::exp(-1.6)));
}
