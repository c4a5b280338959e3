#include "lgt/swap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgt {

namespace {

enum Side : signed char { kFrozen = 0, kInner = 1, kOuter = 2 };

// Edges of the boundary part, and edges shared by both complexes, must carry the identity.
std::vector<signed char> edge_sides(const CellComplex& cx, const Box& b) {
    const RectangleComplexes rc = rectangle_complexes(cx, b);
    std::vector<signed char> side(cx.edge_count(), kFrozen);
    for (int e : rc.inside_edges) side[e] = kInner;
    for (int e : rc.outside_edges) side[e] = side[e] == kInner ? kFrozen : kOuter;
    for (int e : rc.boundary_edges) side[e] = kFrozen;
    return side;
}

SplitConfigs split_by_sides(const std::vector<signed char>& side, const EdgeConfig& sigma) {
    SplitConfigs out{EdgeConfig(sigma.size(), 0), EdgeConfig(sigma.size(), 0)};
    for (std::size_t e = 0; e < sigma.size(); ++e) {
        if (sigma[e] == 0) continue;
        switch (side[e]) {
            case kInner: out.inner[e] = sigma[e]; break;
            case kOuter: out.outer[e] = sigma[e]; break;
            default: throw std::domain_error("split: configuration is nontrivial on a boundary edge");
        }
    }
    return out;
}

}  // namespace

SplitConfigs split_pair(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Box& b) {
    if (static_cast<int>(sigma.size()) != cx.edge_count()) throw std::invalid_argument("split: config size mismatch");
    SplitConfigs out = split_by_sides(edge_sides(cx, b), sigma);
    CellSet in, outside;
    for (int p : config_support(cx, g, sigma)) {
        switch (classify(cx, p, b)) {
            case Region::Inside: in.push_back(p); break;
            case Region::Outside: outside.push_back(p); break;
            case Region::Boundary: throw std::domain_error("split: support meets the boundary part");
        }
    }
    if (config_support(cx, g, out.inner) != in || config_support(cx, g, out.outer) != outside)
        throw std::domain_error("split: support mismatch");
    return out;
}

Box plaquette_box(const CellComplex& cx, int p) {
    const Plaquette& q = cx.plaquette(p);
    Box b;
    b.dim = cx.dim();
    b.lo = b.hi = cx.coord(q.corner);
    ++b.hi[q.mu];
    ++b.hi[q.nu];
    return b;
}

SplitContext::SplitContext(const HomSpace& base) : base_(&base), search_(base.complex()) {}

const SplitContext::Separator& SplitContext::separator(const Box& b) const {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    const CellComplex& cx = base_->complex();
    Separator s;
    s.space = std::make_unique<HomSpace>(cx, base_->group(), constrained_spanning_tree(cx, b, base_->tree().root));
    s.side = edge_sides(cx, b);
    return cache_.emplace(b, std::move(s)).first->second;
}

std::pair<Homomorphism, Homomorphism> SplitContext::split(const Homomorphism& psi, const Box& b) const {
    const Separator& s = separator(b);
    const EdgeConfig sigma = s.space->gauge_fix(s.space->psi_of_config(base_->gauge_fix(psi)));
    const SplitConfigs parts = split_by_sides(s.side, sigma);
    return {base_->psi_of_config(parts.inner), base_->psi_of_config(parts.outer)};
}

Homomorphism SplitContext::join(const Homomorphism& inner, const Homomorphism& outer, const Box& b) const {
    const Separator& s = separator(b);
    const GroupTable& g = base_->group();
    const EdgeConfig a = s.space->gauge_fix(s.space->psi_of_config(base_->gauge_fix(inner)));
    const EdgeConfig c = s.space->gauge_fix(s.space->psi_of_config(base_->gauge_fix(outer)));
    EdgeConfig sigma(a.size(), 0);
    for (std::size_t e = 0; e < a.size(); ++e) {
        if (a[e] != 0 && s.side[e] != kInner) throw std::domain_error("join: inner part leaves the inner complex");
        if (c[e] != 0 && s.side[e] != kOuter) throw std::domain_error("join: outer part leaves the outer complex");
        sigma[e] = g.mul(a[e], c[e]);
    }
    return base_->psi_of_config(sigma);
}

Theta::Theta(const SplitContext& ctx, const CellSet& P)
    : Theta(ctx, P, ctx.search().decompose(make_set(P))) {}

Theta::Theta(const SplitContext& ctx, const CellSet& P, KnotDecomposition d)
    : ctx_(&ctx), P_(make_set(P)), decomposition_(std::move(d)) {}

std::vector<Homomorphism> Theta::split(const Homomorphism& psi) const {
    const HomSpace& base = ctx_->base();
    if (!set_subset(base.support(psi), P_)) throw std::domain_error("theta: support not contained in P");
    std::vector<Homomorphism> parts;
    if (decomposition_.size() == 0) {
        parts.push_back(psi);
        return parts;
    }
    Homomorphism rest = psi;
    for (const Box& b : decomposition_.separators) {
        auto [inner, outer] = ctx_->split(rest, b);
        parts.push_back(std::move(inner));
        rest = std::move(outer);
    }
    parts.push_back(std::move(rest));
    if (fault_ && !parts.front().images.empty() && base.group().order() > 1)
        parts.front().images[0] = base.group().mul(parts.front().images[0], 1);
    return parts;
}

Homomorphism Theta::merge(const std::vector<Homomorphism>& parts) const {
    const std::size_t m = std::max<std::size_t>(1, decomposition_.knots.size());
    if (parts.size() != m) throw std::invalid_argument("theta: wrong number of components");
    Homomorphism acc = parts.back();
    for (std::size_t i = decomposition_.separators.size(); i-- > 0;)
        acc = ctx_->join(parts[i], acc, decomposition_.separators[i]);
    return acc;
}

SwapMap::SwapMap(const SplitContext& ctx, CellSet B1, CellSet B2)
    : ctx_(&ctx), B1_(make_set(std::move(B1))), B2_(make_set(std::move(B2))) {
    if (B1_.empty() || B2_.empty()) throw std::invalid_argument("swap: empty plaquette box");
}

namespace {

int knot_holding(const KnotDecomposition& d, const CellSet& B) {
    const int j = d.knot_of(B.front());
    if (j < 0 || !set_subset(B, d.knots[j])) throw std::logic_error("swap: box split across knots");
    return j;
}

}  // namespace

PairState SwapMap::pair_state(const Homomorphism& psi1, const Homomorphism& psi2) const {
    const HomSpace& base = ctx_->base();
    PairState st;
    st.joint = set_union(set_union(base.support(psi1), base.support(psi2)), set_union(B1_, B2_));
    st.decomposition = ctx_->search().decompose(st.joint);
    st.j1 = knot_holding(st.decomposition, B1_);
    st.j2 = knot_holding(st.decomposition, B2_);
    st.in_E = st.j1 != st.j2;
    return st;
}

std::pair<Homomorphism, Homomorphism> SwapMap::swap_T(const Homomorphism& psi1, const Homomorphism& psi2) const {
    PairState st = pair_state(psi1, psi2);
    if (!st.in_E) throw std::domain_error("swap: pair is not in E");
    const int j2 = st.j2;
    const Theta theta(*ctx_, st.joint, std::move(st.decomposition));
    std::vector<Homomorphism> a = theta.split(psi1);
    std::vector<Homomorphism> b = theta.split(psi2);
    std::swap(a[j2], b[j2]);
    if (fault_) return {theta.merge(a), psi2};
    return {theta.merge(a), theta.merge(b)};
}

std::vector<int> class_multiset(const HomSpace& space, const std::vector<int>& class_of, const Homomorphism& psi1,
                                const Homomorphism& psi2) {
    std::vector<int> out;
    const int n = space.complex().plaquette_count();
    out.reserve(2 * n);
    for (int p = 0; p < n; ++p) {
        out.push_back(class_of[space.plaquette_image(psi1, p)]);
        out.push_back(class_of[space.plaquette_image(psi2, p)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double covariance_bound(double h1_sup, double h2_sup, double p_out) {
    if (h1_sup < 0 || h2_sup < 0) throw std::invalid_argument("covariance bound: negative sup norm");
    if (!(p_out >= 0 && p_out <= 1)) throw std::invalid_argument("covariance bound: p_out outside [0,1]");
    return 2 * h1_sup * h2_sup * p_out;
}

SupportWeights support_weights(const HomSpace& space, const GibbsSpec& spec, const std::vector<Homomorphism>& psis) {
    SupportWeights w;
    for (const Homomorphism& psi : psis) w[space.support(psi)] += nu_weight(space, spec, psi);
    return w;
}

double phi2_from_weights(const SupportWeights& w, const CellSet& P0, const CellSet& P) {
    const CellSet target = make_set(P);
    if (!set_subset(make_set(P0), target)) return 0;
    double total = 0;
    for (const auto& [s1, w1] : w) {
        if (!set_subset(s1, target)) continue;
        const CellSet base = set_union(s1, P0);
        for (const auto& [s2, w2] : w)
            if (set_subset(s2, target) && set_union(base, s2) == target) total += w1 * w2;
    }
    return total;
}

double phi2(const HomSpace& space, const GibbsSpec& spec, const CellSet& P0, const CellSet& P) {
    const CellSet target = make_set(P);
    return phi2_from_weights(support_weights(space, spec, solve_support_constraints(space, target)), P0, target);
}

double phi2_upper(const GibbsSpec& spec, const CellSet& P0, const CellSet& P) {
    const double n = static_cast<double>(make_set(P).size());
    const double free = static_cast<double>(set_difference(make_set(P), make_set(P0)).size());
    const double log_bound =
        n * std::log(4.0) + 2 * n * std::log(static_cast<double>(spec.group().order())) - spec.beta() * spec.delta() * free;
    return std::exp(log_bound);
}

double knot_probability_bound(const HomSpace& space, const GibbsSpec& spec, const CellSet& P0, const CellSet& K) {
    if (!set_subset(make_set(P0), make_set(K))) throw std::invalid_argument("knot bound: P0 must lie in K");
    return phi2(space, spec, P0, K);
}

PeierlsBounds percolation_and_theorem_bounds(const GroupTable& g, const UnitaryRep& rep, double beta, int b1_size,
                                             int b2_size, int L, double f1_sup, double f2_sup) {
    if (b1_size < 0 || b2_size < 0 || L < 1) throw std::invalid_argument("peierls bounds: bad sizes");
    if (f1_sup < 0 || f2_sup < 0) throw std::invalid_argument("peierls bounds: negative sup norm");
    const double delta = delta_G(g, rep);
    const double log_c = std::log(4e24) + 2 * std::log(static_cast<double>(g.order()));
    const double m0 = b1_size + b2_size;
    PeierlsBounds out;
    out.below_threshold = beta < beta_threshold(g, rep);
    out.log_p_out = std::log(2.0) + m0 * log_c - 0.5 * beta * delta * (L - 1);
    out.log_covariance = std::log(2.0) + std::log(f1_sup) + std::log(f2_sup) + out.log_p_out;
    out.p_out = std::exp(out.log_p_out);
    out.covariance = std::exp(out.log_covariance);
    const double log_ratio = log_c - beta * delta;
    out.log_series = log_ratio < 0
                         ? m0 * log_c + (L - 1) * log_ratio - std::log1p(-std::exp(log_ratio))
                         : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace lgt
