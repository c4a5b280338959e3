#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lgt/gibbs.hpp"
#include "lgt/homomorphism.hpp"
#include "lgt/swap.hpp"

namespace lgt {

class DegenerateQuotient : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// H = Z_n inside the unit circle modulo H_t = {h : rho(g) = h I for some g}.
struct HiggsQuotient {
    int h_order = 1;
    int ht_order = 1;
    int order = 1;  // |H / H_t|
    std::vector<std::complex<double>> phases;  // coset representatives e^{2 pi i k / n}, k < order

    int mul(int a, int b) const { return (a + b) % order; }
    int inv(int a) const { return (order - a) % order; }
};

// Throws DegenerateQuotient when H / H_t is trivial, and logic_error when the
// representatives fail the property phi_x chi(s) phi_y^-1 = dim => phi_x = phi_y, s = 1.
HiggsQuotient quotient_by_Ht(const GroupTable& g, const UnitaryRep& rep, int h_order);
bool quotient_key_property(const GroupTable& g, const UnitaryRep& rep, const HiggsQuotient& q);

struct HiggsConfig {
    EdgeConfig sigma;
    std::vector<int> phi;  // quotient index per vertex
};

class HiggsModel {
public:
    HiggsModel(const CellComplex& cx, const GroupTable& g, const UnitaryRep& rep, HiggsQuotient q, double beta,
               double kappa);

    const CellComplex& complex() const { return *cx_; }
    const GroupTable& group() const { return *g_; }
    const UnitaryRep& rep() const { return *rep_; }
    const HiggsQuotient& quotient() const { return q_; }
    double beta() const { return beta_; }
    double kappa() const { return kappa_; }
    int rep_dim() const { return rep_->dim; }

    // Re[phi_x chi(s) phi_y^-1]
    double link(Element s, int phi_x, int phi_y) const;
    HiggsConfig trivial() const;

private:
    const CellComplex* cx_;
    const GroupTable* g_;
    const UnitaryRep* rep_;
    HiggsQuotient q_;
    double beta_;
    double kappa_;
};

double higgs_hamiltonian(const HiggsModel& m, const HiggsConfig& c);

// Exact per-term keys: plaquette terms by class, link terms by (class, phase ratio).
struct TermMultiset {
    std::vector<int> plaquettes;
    std::vector<int> links;
    bool operator==(const TermMultiset&) const = default;
};
TermMultiset term_multiset(const HiggsModel& m, const HiggsConfig& c);
TermMultiset term_multiset(const HiggsModel& m, const HiggsConfig& a, const HiggsConfig& b);

CellSet excited_edges(const HiggsModel& m, const HiggsConfig& c);
CellSet higgs_support(const HiggsModel& m, const HiggsConfig& c);

// Edges {x,y} with phi_x != phi_y, split into components that share a plaquette.
std::vector<CellSet> phase_boundaries(const CellComplex& cx, const std::vector<int>& phi);

// Z2 field chi such that phi*chi keeps exactly the unselected boundary components; chi = 0 at vertex 0.
std::vector<int> flip_map(const CellComplex& cx, const std::vector<int>& phi, const CellSet& selected);

std::pair<HiggsConfig, HiggsConfig> higgs_swap_large_kappa(const HiggsModel& m, const HiggsConfig& c1,
                                                           const HiggsConfig& c2, const CellSet& B1,
                                                           const CellSet& B2);

// 2 max over (a,b) != (1,1) of Re[a chi(b) - dim]; negative for a nondegenerate quotient.
double large_kappa_constant(const HiggsModel& m);

// sigma on the listed edges, phi on the listed vertices, identity elsewhere.
std::vector<HiggsConfig> higgs_family(const HiggsModel& m, const CellSet& edges, const CellSet& vertices,
                                      std::uint64_t cap = std::uint64_t{1} << 22);

// exp H summed by support over family members with positive phase sum.
SupportWeights higgs_large_weights(const HiggsModel& m, const std::vector<HiggsConfig>& family);
// Sum of exp H(C1) exp H(C2) over family pairs with joint support P and positive phase sums.
double higgs_phi2_large(const HiggsModel& m, const std::vector<HiggsConfig>& family, const CellSet& P0,
                        const CellSet& P);
double higgs_phi2_large_bound(const HiggsModel& m, int p0_size, int p_size);

// Small kappa: random-current expansion.

using CurrentField = std::vector<int>;

double c_constant(const UnitaryRep& rep);  // 2 dim + 1

// 2 Re[phi_x chi(s) phi_y^-1] + c
double current_edge_weight(const HiggsModel& m, Element s, int phi_x, int phi_y);
// prod_e (kappa w_e)^I(e) / I(e)!
double current_weight(const HiggsModel& m, const EdgeConfig& sigma, const std::vector<int>& phi,
                      const CurrentField& I);
// Full unnormalized weight exp(H) of (sigma, phi, I).
double current_config_weight(const HiggsModel& m, const EdgeConfig& sigma, const std::vector<int>& phi,
                             const CurrentField& I);
// sum_{I=0}^{imax} x^I / I! and the Poisson tail beyond imax.
double truncated_current_sum(double x, int imax);
double current_tail_bound(double x, int imax);

CellSet activated_edges(const CurrentField& I);
CellSet activated_vertices(const CellComplex& cx, const CurrentField& I);

struct ReducedConfig {
    Homomorphism psi;
    std::vector<int> phi;
    CurrentField I;
};

CellSet reduced_support(const HomSpace& space, const ReducedConfig& rc);

enum class ReducedRoute { Auxiliary, Fiber };

// Fiber average of exp(H) over sigma with psi(sigma) = psi.
double reduced_weight(const HomSpace& space, const HiggsModel& m, const ReducedConfig& rc,
                      ReducedRoute route = ReducedRoute::Auxiliary);

std::pair<ReducedConfig, ReducedConfig> higgs_swap_small_kappa(const SplitContext& ctx, const HiggsModel& m,
                                                               const ReducedConfig& a, const ReducedConfig& b,
                                                               const CellSet& B1, const CellSet& B2);

struct SmallKappaBound {
    double constant = 0;  // c-frak
    double value = 0;
    bool vacuous = false;  // constant >= 1
};
SmallKappaBound higgs_phi2_small_bound(const HiggsModel& m, int p0_size, int p_size);

// Every (psi, I, phi on activated vertices) with psi from the list, I on the listed edges up to imax.
std::vector<ReducedConfig> reduced_family(const HiggsModel& m, const std::vector<Homomorphism>& psis,
                                          const CellSet& edges, int imax, std::uint64_t cap = std::uint64_t{1} << 22);

// Reduced weights summed by support, each scaled by |H/H_t|^-|AV| so the vacuum weighs 1.
SupportWeights higgs_small_weights(const HomSpace& space, const HiggsModel& m, const std::vector<ReducedConfig>& family);
// Normalized polymer function over a family of reduced configurations.
double higgs_phi2_small(const HomSpace& space, const HiggsModel& m, const std::vector<ReducedConfig>& family,
                        const CellSet& P0, const CellSet& P);

}  // namespace lgt
