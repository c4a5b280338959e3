#include "lgt/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "lgt/union_find.hpp"

namespace lgt {

Box Box::cube(int dim, int side) {
    Box b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) b.hi[i] = side;
    return b;
}

bool Box::contains(const Coord& x) const {
    for (int i = 0; i < dim; ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

bool Box::degenerate() const {
    for (int i = 0; i < dim; ++i)
        if (hi[i] == lo[i]) return true;
    return false;
}

std::string Box::str() const {
    std::ostringstream os;
    for (int i = 0; i < dim; ++i) os << (i ? "x" : "") << "[" << lo[i] << "," << hi[i] << "]";
    return os.str();
}

CellComplex::CellComplex(const Box& box) : box_(box) {
    if (box.dim < 2 || box.dim > kMaxDim) throw std::invalid_argument("cell complex: dimension must be 2, 3 or 4");
    for (int i = 0; i < box.dim; ++i)
        if (box.side(i) < 1) throw std::invalid_argument("cell complex: every side must be at least 1");
    const int d = box.dim;
    int n = 1;
    for (int i = d - 1; i >= 0; --i) {
        stride_[i] = n;
        n *= box.side(i) + 1;
    }
    coords_.resize(n);
    for (int v = 0; v < n; ++v) {
        Coord x{};
        int r = v;
        for (int i = 0; i < d; ++i) {
            x[i] = box.lo[i] + r / stride_[i];
            r %= stride_[i];
        }
        coords_[v] = x;
    }

    vertex_edge_.assign(n, {});
    vertex_plaquette_.assign(n, {});
    for (auto& a : vertex_edge_) a.fill(-1);
    for (auto& a : vertex_plaquette_) a.fill(-1);
    vertex_edges_.assign(n, {});
    vertex_plaquettes_.assign(n, {});

    for (int v = 0; v < n; ++v)
        for (int a = 0; a < d; ++a)
            if (coords_[v][a] < box.hi[a]) {
                vertex_edge_[v][a] = edge_count();
                edges_.push_back({v, v + stride_[a], a});
            }
    for (int e = 0; e < edge_count(); ++e) {
        vertex_edges_[edges_[e].tail].push_back(e);
        vertex_edges_[edges_[e].head].push_back(e);
    }

    for (int v = 0; v < n; ++v)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = mu + 1; nu < d; ++nu) {
                if (coords_[v][mu] >= box.hi[mu] || coords_[v][nu] >= box.hi[nu]) continue;
                Plaquette p{};
                p.corner = v;
                p.mu = mu;
                p.nu = nu;
                const int vm = v + stride_[mu], vn = v + stride_[nu], vmn = vm + stride_[nu];
                p.vertices = {v, vm, vmn, vn};
                p.loop = {Step{vertex_edge_[v][mu], true}, Step{vertex_edge_[vm][nu], true},
                          Step{vertex_edge_[vn][mu], false}, Step{vertex_edge_[v][nu], false}};
                vertex_plaquette_[v][mu * kMaxDim + nu] = plaquette_count();
                plaquettes_.push_back(p);
            }
    edge_plaquettes_.assign(edge_count(), {});
    for (int p = 0; p < plaquette_count(); ++p) {
        for (const Step& s : plaquettes_[p].loop) edge_plaquettes_[s.edge].push_back(p);
        for (int v : plaquettes_[p].vertices) vertex_plaquettes_[v].push_back(p);
    }

    for (int v = 0; v < n; ++v)
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                for (int c = b + 1; c < d; ++c) {
                    if (coords_[v][a] >= box.hi[a] || coords_[v][b] >= box.hi[b] || coords_[v][c] >= box.hi[c])
                        continue;
                    Cube q{};
                    q.corner = v;
                    q.axes = {a, b, c};
                    q.plaquettes = {plaquette_index(v, a, b), plaquette_index(v + stride_[c], a, b),
                                    plaquette_index(v, a, c), plaquette_index(v + stride_[b], a, c),
                                    plaquette_index(v, b, c), plaquette_index(v + stride_[a], b, c)};
                    cubes_.push_back(q);
                }
    plaquette_cubes_.assign(plaquette_count(), {});
    for (int c = 0; c < cube_count(); ++c)
        for (int p : cubes_[c].plaquettes) plaquette_cubes_[p].push_back(c);
}

int CellComplex::vertex_index(const Coord& x) const {
    if (!box_.contains(x)) return -1;
    int v = 0;
    for (int i = 0; i < box_.dim; ++i) v += (x[i] - box_.lo[i]) * stride_[i];
    return v;
}

int CellComplex::edge_index(int vertex, int axis) const { return vertex_edge_[vertex][axis]; }

int CellComplex::plaquette_index(int corner, int mu, int nu) const {
    if (mu > nu) std::swap(mu, nu);
    return vertex_plaquette_[corner][mu * kMaxDim + nu];
}

bool CellComplex::plaquette_in(int p, const Box& b) const {
    const Plaquette& q = plaquettes_[p];
    return b.contains(coords_[q.corner]) && b.contains(coords_[q.vertices[2]]);
}

bool CellComplex::plaquette_on_boundary_of(int p, const Box& b) const {
    const Plaquette& q = plaquettes_[p];
    const Coord& x = coords_[q.corner];
    for (int i = 0; i < box_.dim; ++i) {
        if (i == q.mu || i == q.nu) continue;
        if (x[i] == b.lo[i] || x[i] == b.hi[i]) return true;
    }
    return false;
}

void CellComplex::check_loop(const std::vector<Step>& loop) const {
    if (loop.empty()) return;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (loop[i].edge < 0 || loop[i].edge >= edge_count()) throw std::invalid_argument("loop: bad edge index");
        if (target(loop[i]) != source(loop[(i + 1) % loop.size()]))
            throw std::invalid_argument("loop: steps do not chain into a closed loop");
    }
}

CellSet make_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

CellSet set_union(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CellSet set_intersection(const CellSet& a, const CellSet& b) {
    CellSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const CellSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

bool set_subset(const CellSet& a, const CellSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool sets_disjoint(const CellSet& a, const CellSet& b) { return set_intersection(a, b).empty(); }

CellSet plaquettes_in_box(const CellComplex& cx, const Box& b) {
    CellSet out;
    for (int p = 0; p < cx.plaquette_count(); ++p)
        if (cx.plaquette_in(p, b)) out.push_back(p);
    return out;
}

namespace {

void require_sub_box(const CellComplex& cx, const Box& b) {
    if (b.dim != cx.dim()) throw std::invalid_argument("rectangle: dimension mismatch");
    for (int i = 0; i < b.dim; ++i)
        if (b.lo[i] > b.hi[i] || b.lo[i] < cx.box().lo[i] || b.hi[i] > cx.box().hi[i])
            throw std::invalid_argument("rectangle: not a sub-rectangle of the lattice " + b.str());
}

}  // namespace

Region classify(const CellComplex& cx, int p, const Box& b) {
    if (!cx.plaquette_in(p, b)) return Region::Outside;
    if (cx.plaquette_on_boundary_of(p, b) && !cx.plaquette_on_outer_boundary(p)) return Region::Boundary;
    return Region::Inside;
}

CellSet edges_of_plaquettes(const CellComplex& cx, const CellSet& plaquettes) {
    std::vector<int> e;
    for (int p : plaquettes)
        for (const Step& s : cx.plaquette(p).loop) e.push_back(s.edge);
    return make_set(std::move(e));
}

CellSet vertices_of_plaquettes(const CellComplex& cx, const CellSet& plaquettes) {
    std::vector<int> v;
    for (int p : plaquettes)
        for (int x : cx.plaquette(p).vertices) v.push_back(x);
    return make_set(std::move(v));
}

RectangleComplexes rectangle_complexes(const CellComplex& cx, const Box& b) {
    require_sub_box(cx, b);
    RectangleComplexes rc;
    for (int p = 0; p < cx.plaquette_count(); ++p) {
        switch (classify(cx, p, b)) {
            case Region::Inside: rc.inside.push_back(p); break;
            case Region::Boundary:
                rc.inside.push_back(p);
                rc.boundary.push_back(p);
                rc.outside.push_back(p);
                break;
            case Region::Outside: rc.outside.push_back(p); break;
        }
    }
    rc.inside_edges = edges_of_plaquettes(cx, rc.inside);
    rc.boundary_edges = edges_of_plaquettes(cx, rc.boundary);
    rc.outside_edges = edges_of_plaquettes(cx, rc.outside);
    rc.inside_vertices = vertices_of_plaquettes(cx, rc.inside);
    rc.boundary_vertices = vertices_of_plaquettes(cx, rc.boundary);
    rc.outside_vertices = vertices_of_plaquettes(cx, rc.outside);
    return rc;
}

std::vector<Step> SpanningTree::path_to(const CellComplex& cx, int v) const {
    std::vector<Step> path;
    while (v != root) {
        path.push_back(parent_step[v]);
        v = cx.source(parent_step[v]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

SpanningTree tree_from_edges(const CellComplex& cx, int root, const std::vector<char>& in_tree) {
    SpanningTree t;
    t.root = root;
    t.in_tree = in_tree;
    t.parent_step.assign(cx.vertex_count(), Step{});
    std::vector<char> seen(cx.vertex_count(), 0);
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        t.order.push_back(v);
        for (int e : cx.edges_of_vertex(v)) {
            if (!in_tree[e]) continue;
            const Edge& ed = cx.edge(e);
            const bool fwd = ed.tail == v;
            const int w = fwd ? ed.head : ed.tail;
            if (seen[w]) continue;
            seen[w] = 1;
            t.parent_step[w] = Step{e, fwd};
            queue.push_back(w);
        }
    }
    int tree_edges = 0;
    for (char c : in_tree) tree_edges += c ? 1 : 0;
    if (static_cast<int>(t.order.size()) != cx.vertex_count() || tree_edges != cx.vertex_count() - 1)
        throw std::logic_error("edge set is not a spanning tree");
    t.generator_of_edge.assign(cx.edge_count(), -1);
    for (int e = 0; e < cx.edge_count(); ++e)
        if (!in_tree[e]) {
            t.generator_of_edge[e] = t.generator_count();
            t.cotree_edges.push_back(e);
        }
    return t;
}

SpanningTree spanning_tree(const CellComplex& cx, int root) {
    std::vector<char> in_tree(cx.edge_count(), 0);
    std::vector<char> seen(cx.vertex_count(), 0);
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        std::vector<std::pair<int, int>> nbrs;
        for (int e : cx.edges_of_vertex(v)) {
            const Edge& ed = cx.edge(e);
            nbrs.emplace_back(ed.tail == v ? ed.head : ed.tail, e);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (auto [w, e] : nbrs) {
            if (seen[w]) continue;
            seen[w] = 1;
            in_tree[e] = 1;
            queue.push_back(w);
        }
    }
    return tree_from_edges(cx, root, in_tree);
}

namespace {

// Extends a forest (given as chosen edges) greedily over `edges` without closing cycles.
void extend_forest(const CellComplex& cx, const CellSet& seed, const CellSet& edges, std::vector<char>& chosen) {
    UnionFind uf(cx.vertex_count());
    for (int e : seed)
        if (chosen[e]) uf.unite(cx.edge(e).tail, cx.edge(e).head);
    for (int e : edges) {
        if (chosen[e]) continue;
        if (uf.unite(cx.edge(e).tail, cx.edge(e).head)) chosen[e] = 1;
    }
}

}  // namespace

SpanningTree constrained_spanning_tree(const CellComplex& cx, const Box& b, int root) {
    const RectangleComplexes rc = rectangle_complexes(cx, b);
    std::vector<char> boundary(cx.edge_count(), 0);
    extend_forest(cx, {}, rc.boundary_edges, boundary);

    std::vector<char> inner = boundary;
    extend_forest(cx, rc.boundary_edges, rc.inside_edges, inner);
    std::vector<char> outer = boundary;
    extend_forest(cx, rc.boundary_edges, rc.outside_edges, outer);

    // Union of both extensions; if that closes a cycle the rectangle is not separating
    // and the outer extension yields to the inner one.
    std::vector<char> chosen(cx.edge_count(), 0);
    UnionFind uf(cx.vertex_count());
    for (int e = 0; e < cx.edge_count(); ++e)
        if (inner[e] && uf.unite(cx.edge(e).tail, cx.edge(e).head)) chosen[e] = 1;
    for (int e = 0; e < cx.edge_count(); ++e)
        if (outer[e] && !chosen[e] && uf.unite(cx.edge(e).tail, cx.edge(e).head)) chosen[e] = 1;
    for (int e = 0; e < cx.edge_count(); ++e)
        if (!chosen[e] && uf.unite(cx.edge(e).tail, cx.edge(e).head)) chosen[e] = 1;
    return tree_from_edges(cx, root, chosen);
}

bool restricts_to_spanning_forest(const CellComplex& cx, const SpanningTree& t, const CellSet& edges) {
    UnionFind all(cx.vertex_count()), tree(cx.vertex_count());
    for (int e : edges) {
        all.unite(cx.edge(e).tail, cx.edge(e).head);
        if (t.in_tree[e] && !tree.unite(cx.edge(e).tail, cx.edge(e).head)) return false;
    }
    for (int e : edges)
        if (tree.find(cx.edge(e).tail) != tree.find(cx.edge(e).head)) return false;
    return true;
}

Goodness is_good_rectangle(const CellComplex& cx, const Box& b) {
    if (cx.dim() < 3) return Goodness::Unsupported;
    require_sub_box(cx, b);
    const Box& L = cx.box();
    bool proper = true;
    for (int i = 0; i < b.dim; ++i)
        if (b.side(i) < 1 || b.side(i) >= L.side(i)) proper = false;
    if (proper) return Goodness::Good;
    // half-space: exactly one axis cut at an interior level, the rest full
    int cut = -1;
    for (int i = 0; i < b.dim; ++i) {
        if (b.lo[i] == L.lo[i] && b.hi[i] == L.hi[i]) continue;
        if (cut >= 0) return Goodness::NotGood;
        cut = i;
    }
    if (cut < 0) return Goodness::NotGood;
    const bool lower = b.lo[cut] == L.lo[cut] && b.hi[cut] > L.lo[cut] && b.hi[cut] < L.hi[cut];
    const bool upper = b.hi[cut] == L.hi[cut] && b.lo[cut] > L.lo[cut] && b.lo[cut] < L.hi[cut];
    return lower || upper ? Goodness::Good : Goodness::NotGood;
}

std::vector<Box> good_rectangles(const CellComplex& cx) {
    std::vector<Box> out;
    if (cx.dim() < 3) return out;
    const Box& L = cx.box();
    const int d = cx.dim();
    std::vector<std::vector<std::pair<int, int>>> intervals(d);
    for (int i = 0; i < d; ++i)
        for (int lo = L.lo[i]; lo <= L.hi[i]; ++lo)
            for (int hi = lo + 1; hi <= L.hi[i]; ++hi)
                if (hi - lo < L.side(i)) intervals[i].emplace_back(lo, hi);
    std::vector<int> idx(d, 0);
    bool any = true;
    for (int i = 0; i < d; ++i) any = any && !intervals[i].empty();
    while (any) {
        Box b;
        b.dim = d;
        for (int i = 0; i < d; ++i) std::tie(b.lo[i], b.hi[i]) = intervals[i][idx[i]];
        out.push_back(b);
        int i = d - 1;
        while (i >= 0 && ++idx[i] == static_cast<int>(intervals[i].size())) idx[i--] = 0;
        if (i < 0) break;
    }
    for (int i = 0; i < d; ++i)
        for (int k = L.lo[i] + 1; k < L.hi[i]; ++k) {
            Box lower = L, upper = L;
            lower.hi[i] = k;
            upper.lo[i] = k;
            out.push_back(lower);
            out.push_back(upper);
        }
    std::sort(out.begin(), out.end(), [](const Box& a, const Box& b) {
        return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool well_separates(const CellComplex& cx, const Box& b, const CellSet& p1, const CellSet& p2) {
    if (is_good_rectangle(cx, b) != Goodness::Good) return false;
    for (int p : p1)
        if (classify(cx, p, b) != Region::Inside) return false;
    for (int p : p2)
        if (classify(cx, p, b) != Region::Outside) return false;
    return true;
}

}  // namespace lgt
