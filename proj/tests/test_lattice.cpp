#include <set>

#include "doctest.h"
#include "lgt/lattice.hpp"
#include "lgt/rng.hpp"

using namespace lgt;

namespace {

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("cell counts of [0,n]^d") {
    for (int d = 2; d <= 4; ++d)
        for (int n = 1; n <= 3; ++n) {
            if (d == 4 && n == 3) continue;
            CAPTURE(d);
            CAPTURE(n);
            const CellComplex cx(Box::cube(d, n));
            CHECK(cx.vertex_count() == ipow(n + 1, d));
            CHECK(cx.edge_count() == d * n * ipow(n + 1, d - 1));
            CHECK(cx.plaquette_count() == binom(d, 2) * n * n * ipow(n + 1, d - 2));
            if (d >= 3) CHECK(cx.cube_count() == binom(d, 3) * n * n * n * ipow(n + 1, d - 3));
        }
}

TEST_CASE("plaquette loops close and use four distinct edges") {
    const CellComplex cx(Box::cube(3, 2));
    for (int p = 0; p < cx.plaquette_count(); ++p) {
        const Plaquette& q = cx.plaquette(p);
        std::set<int> edges;
        for (const Step& s : q.loop) edges.insert(s.edge);
        CHECK(edges.size() == 4);
        cx.check_loop({q.loop.begin(), q.loop.end()});
        CHECK(cx.source(q.loop[0]) == q.corner);
        for (int e : edges) {
            const auto& ps = cx.plaquettes_of_edge(e);
            CHECK(std::find(ps.begin(), ps.end(), p) != ps.end());
        }
    }
}

TEST_CASE("index lookups round trip") {
    const CellComplex cx(Box::cube(3, 2));
    for (int v = 0; v < cx.vertex_count(); ++v) CHECK(cx.vertex_index(cx.coord(v)) == v);
    for (int e = 0; e < cx.edge_count(); ++e) CHECK(cx.edge_index(cx.edge(e).tail, cx.edge(e).axis) == e);
    for (int p = 0; p < cx.plaquette_count(); ++p) {
        const Plaquette& q = cx.plaquette(p);
        CHECK(cx.plaquette_index(q.corner, q.mu, q.nu) == p);
    }
    CHECK(cx.vertex_index(Coord{3, 0, 0, 0}) == -1);
}

TEST_CASE("set helpers") {
    const CellSet a = make_set({5, 1, 3, 3});
    const CellSet b = make_set({3, 4});
    CHECK(a == CellSet{1, 3, 5});
    CHECK(set_union(a, b) == CellSet{1, 3, 4, 5});
    CHECK(set_intersection(a, b) == CellSet{3});
    CHECK(set_difference(a, b) == CellSet{1, 5});
    CHECK(set_subset(CellSet{1, 5}, a));
    CHECK_FALSE(sets_disjoint(a, b));
    CHECK(set_contains(a, 5));
}

TEST_CASE("rectangle complexes: inside and outside share exactly the boundary part") {
    const CellComplex cx(Box::cube(3, 3));
    for (const Box& b : {Box{3, {1, 1, 1, 0}, {2, 2, 2, 0}}, Box{3, {0, 0, 0, 0}, {1, 2, 3, 0}}}) {
        const RectangleComplexes rc = rectangle_complexes(cx, b);
        CHECK(set_intersection(rc.inside, rc.outside) == rc.boundary);
        CHECK(set_union(rc.inside, rc.outside).size() == static_cast<std::size_t>(cx.plaquette_count()));
        for (int p : rc.boundary) CHECK(classify(cx, p, b) == Region::Boundary);
    }
}

TEST_CASE("spanning trees") {
    for (const Box& box : {Box::cube(2, 3), Box::cube(3, 2)}) {
        const CellComplex cx(box);
        const SpanningTree t = spanning_tree(cx);
        int tree_edges = 0;
        for (char c : t.in_tree) tree_edges += c;
        CHECK(tree_edges == cx.vertex_count() - 1);
        CHECK(t.generator_count() == cx.edge_count() - cx.vertex_count() + 1);
        for (int v = 0; v < cx.vertex_count(); ++v) {
            const auto path = t.path_to(cx, v);
            if (v == t.root) {
                CHECK(path.empty());
                continue;
            }
            CHECK(cx.source(path.front()) == t.root);
            CHECK(cx.target(path.back()) == v);
        }
    }
}

TEST_CASE("constrained trees restrict to spanning forests of each piece") {
    const CellComplex cx(Box::cube(3, 3));
    for (const Box& b : good_rectangles(cx)) {
        const SpanningTree t = constrained_spanning_tree(cx, b);
        const RectangleComplexes rc = rectangle_complexes(cx, b);
        CHECK(restricts_to_spanning_forest(cx, t, rc.boundary_edges));
        CHECK(restricts_to_spanning_forest(cx, t, rc.inside_edges));
        CHECK(restricts_to_spanning_forest(cx, t, rc.outside_edges));
    }
}

TEST_CASE("good rectangles") {
    CHECK(good_rectangles(CellComplex(Box::cube(3, 1))).empty());
    const CellComplex cx(Box::cube(3, 2));
    // unit cubes (8) and half-spaces x_i <= 1, x_i >= 1 (6)
    CHECK(good_rectangles(cx).size() == 14);
    CHECK(is_good_rectangle(CellComplex(Box::cube(2, 3)), Box{2, {1, 1, 0, 0}, {2, 2, 0, 0}}) == Goodness::Unsupported);
    CHECK(is_good_rectangle(cx, Box::cube(3, 2)) == Goodness::NotGood);
}
