#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "lgt/gibbs.hpp"
#include "lgt/homomorphism.hpp"
#include "lgt/topology.hpp"

namespace lgt {

struct SplitConfigs {
    EdgeConfig inner;  // carries the values on S2(B) edges away from the boundary part
    EdgeConfig outer;
};

// Splits a gauge-fixed configuration (tree from constrained_spanning_tree(B)) along B.
// Throws if the configuration is nontrivial on an edge of the boundary part.
SplitConfigs split_pair(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Box& b);

// Degenerate box holding exactly one plaquette.
Box plaquette_box(const CellComplex& cx, int p);

// Base homomorphism space plus cached per-separator trees; shared by every Theta built from it.
class SplitContext {
public:
    explicit SplitContext(const HomSpace& base);

    const HomSpace& base() const { return *base_; }
    const SeparatorSearch& search() const { return search_; }

    // Re-express psi in the gauge of the separator's constrained tree and split it.
    std::pair<Homomorphism, Homomorphism> split(const Homomorphism& psi, const Box& b) const;
    Homomorphism join(const Homomorphism& inner, const Homomorphism& outer, const Box& b) const;

private:
    struct Separator {
        std::unique_ptr<HomSpace> space;
        std::vector<signed char> side;  // per edge: 0 boundary, 1 inner, 2 outer, 3 shared off the boundary
    };
    const Separator& separator(const Box& b) const;

    const HomSpace* base_;
    SeparatorSearch search_;
    mutable std::map<Box, Separator> cache_;
};

// Bijection psi <-> (psi_1, ..., psi_m) over the knot decomposition of P.
class Theta {
public:
    Theta(const SplitContext& ctx, const CellSet& P);
    Theta(const SplitContext& ctx, const CellSet& P, KnotDecomposition d);

    const KnotDecomposition& decomposition() const { return decomposition_; }
    std::vector<Homomorphism> split(const Homomorphism& psi) const;
    Homomorphism merge(const std::vector<Homomorphism>& parts) const;

    // Test hook: perturbs the first component of every split.
    void inject_fault(bool on) { fault_ = on; }

private:
    const SplitContext* ctx_;
    CellSet P_;
    KnotDecomposition decomposition_;
    bool fault_ = false;
};

struct PairState {
    CellSet joint;
    KnotDecomposition decomposition;
    int j1 = -1;
    int j2 = -1;
    bool in_E = false;
};

class SwapMap {
public:
    SwapMap(const SplitContext& ctx, CellSet B1, CellSet B2);

    PairState pair_state(const Homomorphism& psi1, const Homomorphism& psi2) const;
    bool in_E(const Homomorphism& psi1, const Homomorphism& psi2) const { return pair_state(psi1, psi2).in_E; }
    // Exchanges the j2-th knot components; throws for pairs outside E.
    std::pair<Homomorphism, Homomorphism> swap_T(const Homomorphism& psi1, const Homomorphism& psi2) const;

    void inject_fault(bool on) { fault_ = on; }

private:
    const SplitContext* ctx_;
    CellSet B1_, B2_;
    bool fault_ = false;
};

// Sorted conjugacy-class indices of all plaquette images of both homomorphisms.
std::vector<int> class_multiset(const HomSpace& space, const std::vector<int>& class_of, const Homomorphism& psi1,
                                const Homomorphism& psi2);

double covariance_bound(double h1_sup, double h2_sup, double p_out);

// Summed nu weights of homomorphisms grouped by exact support.
using SupportWeights = std::map<CellSet, double>;

SupportWeights support_weights(const HomSpace& space, const GibbsSpec& spec, const std::vector<Homomorphism>& psis);

// Sum over support pairs with S1 u S2 u P0 = P of W(S1) W(S2).
double phi2_from_weights(const SupportWeights& w, const CellSet& P0, const CellSet& P);

double phi2(const HomSpace& space, const GibbsSpec& spec, const CellSet& P0, const CellSet& P);
double phi2_upper(const GibbsSpec& spec, const CellSet& P0, const CellSet& P);
double knot_probability_bound(const HomSpace& space, const GibbsSpec& spec, const CellSet& P0, const CellSet& K);

struct PeierlsBounds {
    double p_out = 0;
    double covariance = 0;
    double log_p_out = 0;  // natural log, finite even when p_out underflows
    double log_covariance = 0;
    double log_series = 0;  // log of the unsimplified geometric tail sum, +inf when the ratio is >= 1
    bool below_threshold = false;
};

PeierlsBounds percolation_and_theorem_bounds(const GroupTable& g, const UnitaryRep& rep, double beta, int b1_size,
                                             int b2_size, int L, double f1_sup = 1.0, double f2_sup = 1.0);

}  // namespace lgt
