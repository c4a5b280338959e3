#include "lgt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "lgt/union_find.hpp"

namespace lgt {

std::vector<CellSet> vortex_decomposition(const CellComplex& cx, const CellSet& P) {
    const CellSet s = make_set(P);
    const int n = static_cast<int>(s.size());
    UnionFind uf(n);
    auto index_of = [&](int p) {
        auto it = std::lower_bound(s.begin(), s.end(), p);
        return it != s.end() && *it == p ? static_cast<int>(it - s.begin()) : -1;
    };
    for (int i = 0; i < n; ++i)
        for (int c : cx.cubes_of_plaquette(s[i]))
            for (int q : cx.cube(c).plaquettes) {
                const int j = index_of(q);
                if (j >= 0) uf.unite(i, j);
            }
    std::vector<CellSet> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(s[i]);
    }
    return out;
}

int KnotDecomposition::knot_of(int plaquette) const {
    for (int i = 0; i < size(); ++i)
        if (set_contains(knots[i], plaquette)) return i;
    return -1;
}

SeparatorSearch::SeparatorSearch(const CellComplex& cx) : cx_(&cx) {
    if (cx.dim() < 3) throw std::invalid_argument("knot decomposition needs dimension at least 3");
    candidates_ = good_rectangles(cx);
}

std::optional<int> SeparatorSearch::first_split(const CellSet& K) const {
    for (int c = 0; c < static_cast<int>(candidates_.size()); ++c) {
        const Box& b = candidates_[c];
        std::size_t inside = 0;
        bool blocked = false;
        for (int p : K) {
            const Region r = classify(*cx_, p, b);
            if (r == Region::Boundary) {
                blocked = true;
                break;
            }
            if (r == Region::Inside) ++inside;
        }
        if (!blocked && inside > 0 && inside < K.size()) return c;
    }
    return std::nullopt;
}

KnotDecomposition SeparatorSearch::decompose(const CellSet& P) const {
    KnotDecomposition d;
    if (P.empty()) return d;

    // split to a fixpoint: no candidate separates any part
    std::vector<CellSet> parts{make_set(P)};
    for (std::size_t i = 0; i < parts.size();) {
        const auto c = first_split(parts[i]);
        if (!c) {
            ++i;
            continue;
        }
        CellSet in, out;
        for (int p : parts[i]) (classify(*cx_, p, candidates_[*c]) == Region::Inside ? in : out).push_back(p);
        parts[i] = std::move(in);
        parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(out));
    }
    std::sort(parts.begin(), parts.end(), [](const CellSet& a, const CellSet& b) { return a.front() < b.front(); });

    // peel parts off one at a time, each isolated from everything left by a candidate
    while (parts.size() > 1) {
        bool peeled = false;
        for (const Box& b : candidates_) {
            std::vector<std::vector<Region>> regions;
            for (const CellSet& K : parts) {
                regions.emplace_back();
                for (int p : K) regions.back().push_back(classify(*cx_, p, b));
            }
            auto all_are = [&](std::size_t k, Region r) {
                return std::all_of(regions[k].begin(), regions[k].end(), [r](Region x) { return x == r; });
            };
            for (std::size_t k = 0; k < parts.size() && !peeled; ++k) {
                if (!all_are(k, Region::Inside)) continue;
                bool rest_outside = true;
                for (std::size_t j = 0; j < parts.size() && rest_outside; ++j)
                    if (j != k) rest_outside = all_are(j, Region::Outside);
                if (!rest_outside) continue;
                d.knots.push_back(std::move(parts[k]));
                d.separators.push_back(b);
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(k));
                peeled = true;
            }
            if (peeled) break;
        }
        if (!peeled) throw std::runtime_error("knot decomposition: parts admit no sequential separation");
    }
    d.knots.push_back(std::move(parts.front()));
    return d;
}

bool SeparatorSearch::certify(const CellSet& P, const KnotDecomposition& d) const {
    if (d.knots.empty()) return P.empty();
    if (d.separators.size() + 1 != d.knots.size()) return false;
    CellSet all;
    std::size_t total = 0;
    for (const CellSet& K : d.knots) {
        if (!is_knot(K)) return false;
        all = set_union(all, K);
        total += K.size();
    }
    if (all != make_set(P) || total != all.size()) return false;
    for (std::size_t i = 0; i + 1 < d.knots.size(); ++i) {
        CellSet rest;
        for (std::size_t j = i + 1; j < d.knots.size(); ++j) rest = set_union(rest, d.knots[j]);
        if (!well_separates(*cx_, d.separators[i], d.knots[i], rest)) return false;
    }
    return true;
}

KnotDecomposition knot_decomposition(const CellComplex& cx, const CellSet& P) {
    return SeparatorSearch(cx).decompose(P);
}

std::optional<Box> minimal_cube(const CellComplex& cx, const CellSet& P) {
    if (P.empty()) return std::nullopt;
    const Box& L = cx.box();
    int max_side = L.side(0);
    for (int i = 1; i < cx.dim(); ++i) max_side = std::min(max_side, L.side(i));
    for (int s = 1; s <= max_side; ++s) {
        Coord corner = L.lo;
        while (true) {
            Box b;
            b.dim = cx.dim();
            for (int i = 0; i < cx.dim(); ++i) {
                b.lo[i] = corner[i];
                b.hi[i] = corner[i] + s;
            }
            if (std::all_of(P.begin(), P.end(), [&](int p) { return classify(cx, p, b) == Region::Inside; }))
                return b;
            int i = cx.dim() - 1;
            while (i >= 0 && ++corner[i] > L.hi[i] - s) corner[i--] = L.lo[i];
            if (i < 0) break;
        }
    }
    return std::nullopt;
}

namespace {

bool meets_box(const CellComplex& cx, const CellSet& P, const Box& b) {
    return std::any_of(P.begin(), P.end(), [&](int p) { return cx.plaquette_in(p, b); });
}

}  // namespace

CubeRelation minimal_cube_and_J(const CellComplex& cx, const CellSet& P, const CellSet& Q) {
    const auto bp = minimal_cube(cx, P);
    const auto bq = minimal_cube(cx, Q);
    if (!bp || !bq) throw std::domain_error("minimal cube: no admissible cube");
    return {*bp, *bq, meets_box(cx, P, *bq) || meets_box(cx, Q, *bp)};
}

Hierarchy hierarchy_graphs(const CellComplex& cx, const CellSet& P) {
    if (cx.dim() < 3) throw std::invalid_argument("hierarchy graphs need dimension at least 3");
    Hierarchy h;
    if (P.empty()) return h;
    const int cap = static_cast<int>(std::floor(std::log2(static_cast<double>(P.size())))) + 1;
    std::vector<CellSet> vertices = vortex_decomposition(cx, P);
    for (int s = 0; s <= cap; ++s) {
        HierarchyLevel level;
        level.vertices = vertices;
        const int n = static_cast<int>(vertices.size());
        if (n == 1) {
            h.levels.push_back(std::move(level));
            h.s_star = s;
            break;
        }
        std::vector<Box> cubes;
        for (const CellSet& v : vertices) {
            auto b = minimal_cube(cx, v);
            if (!b) throw std::domain_error("minimal cube: no admissible cube");
            cubes.push_back(*b);
        }
        UnionFind uf(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (meets_box(cx, vertices[i], cubes[j]) || meets_box(cx, vertices[j], cubes[i])) {
                    level.edges.emplace_back(i, j);
                    uf.unite(i, j);
                }
        const bool stuck = level.edges.empty();
        h.levels.push_back(std::move(level));
        if (stuck) break;
        std::vector<CellSet> next;
        std::vector<int> slot(n, -1);
        for (int i = 0; i < n; ++i) {
            const int r = uf.find(i);
            if (slot[r] < 0) {
                slot[r] = static_cast<int>(next.size());
                next.emplace_back();
            }
            next[slot[r]] = set_union(next[slot[r]], vertices[i]);
        }
        vertices = std::move(next);
    }
    return h;
}

std::vector<CellSet> enumerate_knots_containing(const SeparatorSearch& search, int p, int m) {
    if (m < 1 || m > 4) throw std::invalid_argument("knot enumeration supports sizes 1 to 4");
    const int n = search.complex().plaquette_count();
    std::vector<CellSet> out;
    std::vector<int> pick;
    std::function<void(int)> grow = [&](int from) {
        if (static_cast<int>(pick.size()) == m - 1) {
            std::vector<int> k = pick;
            k.push_back(p);
            CellSet K = make_set(std::move(k));
            if (search.is_knot(K)) out.push_back(std::move(K));
            return;
        }
        for (int q = from; q < n; ++q) {
            if (q == p) continue;
            pick.push_back(q);
            grow(q + 1);
            pick.pop_back();
        }
    };
    grow(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool knot_size_floor(const CellSet& P1, const CellSet& P2, int L, const CellSet& K) {
    return static_cast<long>(K.size()) >= static_cast<long>(P1.size() + P2.size()) + L - 1;
}

}  // namespace lgt
