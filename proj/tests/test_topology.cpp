#include <algorithm>
#include <random>

#include "doctest.h"
#include "lgt/topology.hpp"

using namespace lgt;

namespace {

int plaq(const CellComplex& cx, Coord x, int mu, int nu) { return cx.plaquette_index(cx.vertex_index(x), mu, nu); }

// Components of P under "share a 3-cell", by plain graph search.
std::vector<CellSet> components_oracle(const CellComplex& cx, const CellSet& P) {
    std::vector<CellSet> out;
    std::vector<char> seen(cx.plaquette_count(), 0);
    for (int p : P) {
        if (seen[p]) continue;
        CellSet comp;
        std::vector<int> stack{p};
        seen[p] = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            comp.push_back(a);
            for (int q : P) {
                if (seen[q]) continue;
                const auto& ca = cx.cubes_of_plaquette(a);
                const auto& cq = cx.cubes_of_plaquette(q);
                bool share = false;
                for (int c : ca) share = share || std::find(cq.begin(), cq.end(), c) != cq.end();
                if (share) {
                    seen[q] = 1;
                    stack.push_back(q);
                }
            }
        }
        out.push_back(make_set(comp));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("vortex decomposition matches a direct search and ignores input order") {
    const CellComplex cx(Box::cube(3, 3));
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> pick;
        for (int p = 0; p < cx.plaquette_count(); ++p)
            if (rng() % 9 == 0) pick.push_back(p);
        const CellSet P = make_set(pick);
        std::vector<CellSet> got = vortex_decomposition(cx, P);
        std::vector<CellSet> sorted = got;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == components_oracle(cx, P));
        std::shuffle(pick.begin(), pick.end(), rng);
        CHECK(vortex_decomposition(cx, make_set(pick)) == got);
    }
}

TEST_CASE("knot decompositions certify on random supports") {
    const CellComplex cx(Box::cube(3, 3));
    const SeparatorSearch search(cx);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> pick;
        for (int p = 0; p < cx.plaquette_count(); ++p)
            if (rng() % 15 == 0) pick.push_back(p);
        const CellSet P = make_set(pick);
        const KnotDecomposition d = search.decompose(P);
        CHECK(search.certify(P, d));
        CellSet all;
        for (const CellSet& k : d.knots) {
            CHECK(sets_disjoint(all, k));
            all = set_union(all, k);
        }
        CHECK(all == P);
    }
}

TEST_CASE("far corner plaquettes form separate knots") {
    const CellComplex cx(Box::cube(3, 2));
    const int a = plaq(cx, {0, 0, 0, 0}, 0, 1);
    const int b = plaq(cx, {1, 1, 2, 0}, 0, 1);
    const KnotDecomposition d = knot_decomposition(cx, make_set({a, b}));
    CHECK(d.size() == 2);
    CHECK(d.knot_of(a) != d.knot_of(b));
    // no good rectangle on the unit cube: everything is one knot
    const CellComplex one(Box::cube(3, 1));
    CHECK(knot_decomposition(one, make_set({0, 5})).size() == 1);
}

TEST_CASE("knot enumeration") {
    const CellComplex cx(Box::cube(3, 2));
    const SeparatorSearch search(cx);
    for (int p : {0, 7, 20}) CHECK(enumerate_knots_containing(search, p, 1) == std::vector<CellSet>{CellSet{p}});
    CHECK_THROWS(enumerate_knots_containing(search, 0, 5));
    for (int m = 2; m <= 3; ++m)
        for (const CellSet& K : enumerate_knots_containing(search, 0, m)) {
            CHECK(K.size() == static_cast<std::size_t>(m));
            CHECK(search.is_knot(K));
        }
}

TEST_CASE("knot size floor formula") {
    CHECK(knot_size_floor({1}, {2}, 5, {1, 2, 3, 4, 5, 6}));
    CHECK_FALSE(knot_size_floor({1}, {2}, 5, {1, 2, 3, 4, 5}));
    CHECK(knot_size_floor({1}, {2}, 0, {1}));
}

TEST_CASE("minimal cube and linkage") {
    const CellComplex cx(Box::cube(3, 4));
    const int p = plaq(cx, {2, 2, 2, 0}, 0, 1);
    const auto c = minimal_cube(cx, {p});
    REQUIRE(c.has_value());
    // a unit cube always has p touching a transverse inner face
    CHECK(c->side(0) == 2);
    CHECK(classify(cx, p, *c) == Region::Inside);
    const int far = plaq(cx, {0, 0, 0, 0}, 0, 1);
    const int other = plaq(cx, {3, 3, 4, 0}, 0, 1);
    CHECK_FALSE(minimal_cube_and_J(cx, {far}, {other}).linked);
    CHECK(minimal_cube_and_J(cx, {p}, {plaq(cx, {2, 2, 3, 0}, 0, 1)}).linked);
}
