#pragma once

#include <optional>
#include <vector>

#include "lgt/lattice.hpp"

namespace lgt {

// Connected components of P under "share a 3-cell", ordered by least plaquette.
std::vector<CellSet> vortex_decomposition(const CellComplex& cx, const CellSet& P);

struct KnotDecomposition {
    std::vector<CellSet> knots;
    std::vector<Box> separators;  // separators[i] isolates knots[i] from all later knots

    int knot_of(int plaquette) const;  // -1 when absent
    int size() const { return static_cast<int>(knots.size()); }
};

// Candidate separators of a complex, cached for repeated decompositions.
class SeparatorSearch {
public:
    explicit SeparatorSearch(const CellComplex& cx);

    const CellComplex& complex() const { return *cx_; }
    const std::vector<Box>& candidates() const { return candidates_; }

    // Index of the first candidate that splits K into two nonempty well-separated halves.
    std::optional<int> first_split(const CellSet& K) const;
    bool is_knot(const CellSet& K) const { return !K.empty() && !first_split(K); }

    KnotDecomposition decompose(const CellSet& P) const;

    // Checks the sequential separation property and maximality of every part.
    bool certify(const CellSet& P, const KnotDecomposition& d) const;

private:
    const CellComplex* cx_;
    std::vector<Box> candidates_;
};

KnotDecomposition knot_decomposition(const CellComplex& cx, const CellSet& P);

// Smallest cube B with P strictly inside S2(B), least corner on ties.
std::optional<Box> minimal_cube(const CellComplex& cx, const CellSet& P);

struct CubeRelation {
    Box cube_p;
    Box cube_q;
    bool linked;
};

// Throws when either set has no admissible cube.
CubeRelation minimal_cube_and_J(const CellComplex& cx, const CellSet& P, const CellSet& Q);

struct HierarchyLevel {
    std::vector<CellSet> vertices;
    std::vector<std::pair<int, int>> edges;
};

struct Hierarchy {
    std::vector<HierarchyLevel> levels;
    std::optional<int> s_star;
};

Hierarchy hierarchy_graphs(const CellComplex& cx, const CellSet& P);

// All knots of size m (m <= 4) containing plaquette p.
std::vector<CellSet> enumerate_knots_containing(const SeparatorSearch& search, int p, int m);

bool knot_size_floor(const CellSet& P1, const CellSet& P2, int L, const CellSet& K);

}  // namespace lgt
