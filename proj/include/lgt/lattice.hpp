#pragma once

#include <array>
#include <string>
#include <vector>

namespace lgt {

constexpr int kMaxDim = 4;
using Coord = std::array<int, kMaxDim>;

// Axis-aligned box [lo, hi] of lattice points; sides may be zero.
struct Box {
    int dim = 0;
    Coord lo{};
    Coord hi{};

    static Box cube(int dim, int side);
    int side(int axis) const { return hi[axis] - lo[axis]; }
    bool contains(const Coord& x) const;
    bool degenerate() const;
    std::string str() const;
    auto operator<=>(const Box&) const = default;
};

// Oriented traversal of an edge.
struct Step {
    int edge = -1;
    bool forward = true;
    bool operator==(const Step&) const = default;
};

struct Edge {
    int tail;
    int head;
    int axis;
};

struct Plaquette {
    int corner;
    int mu;
    int nu;
    std::array<int, 4> vertices;  // corner, +mu, +mu+nu, +nu
    std::array<Step, 4> loop;     // +e_mu, +e_nu, -e_mu, -e_nu from the corner
};

struct Cube {
    int corner;
    std::array<int, 3> axes;
    std::array<int, 6> plaquettes;
};

// Cubical complex of a box: vertices, positively oriented edges, plaquettes and 3-cells,
// each indexed lexicographically (vertex coordinates first, then axes).
class CellComplex {
public:
    explicit CellComplex(const Box& box);

    const Box& box() const { return box_; }
    int dim() const { return box_.dim; }
    int vertex_count() const { return static_cast<int>(coords_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int plaquette_count() const { return static_cast<int>(plaquettes_.size()); }
    int cube_count() const { return static_cast<int>(cubes_.size()); }

    const Coord& coord(int v) const { return coords_[v]; }
    int vertex_index(const Coord& x) const;  // -1 outside
    const Edge& edge(int e) const { return edges_[e]; }
    const Plaquette& plaquette(int p) const { return plaquettes_[p]; }
    const Cube& cube(int c) const { return cubes_[c]; }

    int edge_index(int vertex, int axis) const;  // edge from vertex along +axis, or -1
    int plaquette_index(int corner, int mu, int nu) const;

    const std::vector<int>& plaquettes_of_edge(int e) const { return edge_plaquettes_[e]; }
    const std::vector<int>& cubes_of_plaquette(int p) const { return plaquette_cubes_[p]; }
    const std::vector<int>& plaquettes_of_vertex(int v) const { return vertex_plaquettes_[v]; }
    const std::vector<int>& edges_of_vertex(int v) const { return vertex_edges_[v]; }

    int source(Step s) const { return s.forward ? edges_[s.edge].tail : edges_[s.edge].head; }
    int target(Step s) const { return s.forward ? edges_[s.edge].head : edges_[s.edge].tail; }

    // Plaquette lies in the box (all four corners inside).
    bool plaquette_in(int p, const Box& b) const;
    // Plaquette inside b and touching one of b's faces transverse to it.
    bool plaquette_on_boundary_of(int p, const Box& b) const;
    bool plaquette_on_outer_boundary(int p) const { return plaquette_on_boundary_of(p, box_); }

    // Steps of a closed loop, validated to chain head-to-tail.
    void check_loop(const std::vector<Step>& loop) const;

private:
    Box box_;
    Coord stride_{};
    std::vector<Coord> coords_;
    std::vector<Edge> edges_;
    std::vector<Plaquette> plaquettes_;
    std::vector<Cube> cubes_;
    std::vector<std::array<int, kMaxDim>> vertex_edge_;
    std::vector<std::array<int, kMaxDim * kMaxDim>> vertex_plaquette_;
    std::vector<std::vector<int>> edge_plaquettes_;
    std::vector<std::vector<int>> plaquette_cubes_;
    std::vector<std::vector<int>> vertex_plaquettes_;
    std::vector<std::vector<int>> vertex_edges_;
};

// Sorted, duplicate-free list of cell indices.
using CellSet = std::vector<int>;

CellSet make_set(std::vector<int> v);
CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
bool set_contains(const CellSet& s, int x);
bool set_subset(const CellSet& a, const CellSet& b);
bool sets_disjoint(const CellSet& a, const CellSet& b);

CellSet plaquettes_in_box(const CellComplex& cx, const Box& b);

// S2(B), its boundary part, and the complementary complex with their 1-skeleta.
struct RectangleComplexes {
    CellSet inside;     // plaquettes of B
    CellSet boundary;   // plaquettes of B on a face of B but not on the outer boundary
    CellSet outside;    // plaquettes not in B, together with boundary
    CellSet inside_edges, boundary_edges, outside_edges;
    CellSet inside_vertices, boundary_vertices, outside_vertices;
};

RectangleComplexes rectangle_complexes(const CellComplex& cx, const Box& b);

// Where a plaquette sits relative to a box: strictly in S2(B), on its boundary part, or outside B.
enum class Region { Inside, Boundary, Outside };
Region classify(const CellComplex& cx, int p, const Box& b);

CellSet edges_of_plaquettes(const CellComplex& cx, const CellSet& plaquettes);
CellSet vertices_of_plaquettes(const CellComplex& cx, const CellSet& plaquettes);

struct SpanningTree {
    int root = 0;
    std::vector<char> in_tree;             // per edge
    std::vector<Step> parent_step;         // per vertex, step arriving from the parent
    std::vector<int> order;                // vertices with parents first
    std::vector<int> generator_of_edge;    // co-tree edge -> generator index, else -1
    std::vector<int> cotree_edges;         // generator index -> edge

    int generator_count() const { return static_cast<int>(cotree_edges.size()); }
    std::vector<Step> path_to(const CellComplex& cx, int v) const;  // root to v
};

// Spanning tree from an edge set; throws unless the edges form a spanning tree.
SpanningTree tree_from_edges(const CellComplex& cx, int root, const std::vector<char>& in_tree);

// Breadth-first tree from the root, neighbours visited in increasing vertex index.
SpanningTree spanning_tree(const CellComplex& cx, int root = 0);

// Tree whose restrictions to the boundary part, S2(B) and its complement are spanning
// forests of each piece.
SpanningTree constrained_spanning_tree(const CellComplex& cx, const Box& b, int root = 0);

// True when the tree restricted to the given edge set is a spanning forest of the graph
// spanned by those edges.
bool restricts_to_spanning_forest(const CellComplex& cx, const SpanningTree& t, const CellSet& edges);

// Good separating rectangles: proper boxes with all sides in [1, N), or half-spaces
// {x_i <= k}, {x_i >= k} with k strictly inside. Only meaningful for dim >= 3.
enum class Goodness { Good, NotGood, Unsupported };
Goodness is_good_rectangle(const CellComplex& cx, const Box& b);

// All good rectangles in lexicographic (lo, hi) order.
std::vector<Box> good_rectangles(const CellComplex& cx);

bool well_separates(const CellComplex& cx, const Box& b, const CellSet& p1, const CellSet& p2);

}  // namespace lgt
