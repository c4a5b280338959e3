#include "lgt/higgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "lgt/topology.hpp"
#include "lgt/union_find.hpp"

namespace lgt {

namespace {

constexpr double kTol = 1e-9;

std::complex<double> root_of_unity(int k, int n) {
    const double t = 2 * std::numbers::pi * k / n;
    return {std::cos(t), std::sin(t)};
}

// Odometer over digits[i] in [0, radix).
bool advance(std::vector<int>& digits, int radix) {
    for (int& d : digits) {
        if (++d < radix) return true;
        d = 0;
    }
    return false;
}

std::uint64_t family_size(int radix, std::size_t digits, std::uint64_t cap) {
    return checked_power(static_cast<std::uint64_t>(radix), static_cast<int>(digits), cap);
}

void require_z2(const HiggsModel& m) {
    if (m.quotient().order != 2) throw std::invalid_argument("higgs: this construction needs a Z2 quotient");
}

}  // namespace

HiggsQuotient quotient_by_Ht(const GroupTable& g, const UnitaryRep& rep, int h_order) {
    if (h_order < 1) throw std::invalid_argument("higgs: |H| must be positive");
    std::set<int> ht;
    for (int e = 0; e < g.order(); ++e) {
        const Eigen::MatrixXcd& M = rep.matrices[e];
        const Complex c = M(0, 0);
        if ((M - c * Eigen::MatrixXcd::Identity(rep.dim, rep.dim)).norm() > kTol) continue;
        const int j = static_cast<int>(std::lround(std::arg(c) * h_order / (2 * std::numbers::pi)));
        const int jm = ((j % h_order) + h_order) % h_order;
        if (std::abs(c - root_of_unity(jm, h_order)) < kTol) ht.insert(jm);
    }
    HiggsQuotient q;
    q.h_order = h_order;
    q.ht_order = static_cast<int>(ht.size());
    if (h_order % q.ht_order != 0) throw std::logic_error("higgs: H_t is not a subgroup");
    q.order = h_order / q.ht_order;
    if (q.order == 1) throw DegenerateQuotient("higgs: H / H_t is trivial");
    for (int k = 0; k < q.order; ++k) q.phases.push_back(root_of_unity(k, h_order));
    if (!quotient_key_property(g, rep, q)) throw std::logic_error("higgs: quotient representatives fail the key property");
    return q;
}

bool quotient_key_property(const GroupTable& g, const UnitaryRep& rep, const HiggsQuotient& q) {
    for (int a = 0; a < q.order; ++a)
        for (int b = 0; b < q.order; ++b)
            for (int s = 0; s < g.order(); ++s) {
                const Complex v = q.phases[a] * rep.chi(s) * std::conj(q.phases[b]);
                if (std::abs(v - Complex(rep.dim, 0)) < kTol && (a != b || s != 0)) return false;
            }
    return true;
}

HiggsModel::HiggsModel(const CellComplex& cx, const GroupTable& g, const UnitaryRep& rep, HiggsQuotient q,
                       double beta, double kappa)
    : cx_(&cx), g_(&g), rep_(&rep), q_(std::move(q)), beta_(beta), kappa_(kappa) {
    if (!(beta >= 0) || !(kappa >= 0)) throw std::invalid_argument("higgs: beta and kappa must be nonnegative");
    if (q_.order < 2 || static_cast<int>(q_.phases.size()) != q_.order)
        throw std::invalid_argument("higgs: malformed quotient");
}

double HiggsModel::link(Element s, int phi_x, int phi_y) const {
    return std::real(q_.phases[phi_x] * rep_->chi(s) * std::conj(q_.phases[phi_y]));
}

HiggsConfig HiggsModel::trivial() const {
    return {EdgeConfig(cx_->edge_count(), 0), std::vector<int>(cx_->vertex_count(), 0)};
}

namespace {

void check_config(const HiggsModel& m, const HiggsConfig& c) {
    if (static_cast<int>(c.sigma.size()) != m.complex().edge_count() ||
        static_cast<int>(c.phi.size()) != m.complex().vertex_count())
        throw std::invalid_argument("higgs: configuration size mismatch");
}

}  // namespace

double higgs_hamiltonian(const HiggsModel& m, const HiggsConfig& c) {
    check_config(m, c);
    const CellComplex& cx = m.complex();
    const double d = m.rep_dim();
    double gauge = 0;
    for (int p = 0; p < cx.plaquette_count(); ++p)
        gauge += std::real(m.rep().chi(plaquette_value(cx, m.group(), c.sigma, p))) - d;
    double higgs = 0;
    for (int e = 0; e < cx.edge_count(); ++e) {
        const Edge& ed = cx.edge(e);
        higgs += m.link(c.sigma[e], c.phi[ed.tail], c.phi[ed.head]) - d;
    }
    return m.beta() * gauge + m.kappa() * higgs;
}

TermMultiset term_multiset(const HiggsModel& m, const HiggsConfig& c) {
    check_config(m, c);
    const CellComplex& cx = m.complex();
    const std::vector<int> cls = class_index(m.group());
    const int span = 2 * m.quotient().order - 1;
    TermMultiset t;
    for (int p = 0; p < cx.plaquette_count(); ++p) t.plaquettes.push_back(cls[plaquette_value(cx, m.group(), c.sigma, p)]);
    for (int e = 0; e < cx.edge_count(); ++e) {
        const Edge& ed = cx.edge(e);
        t.links.push_back(cls[c.sigma[e]] * span + c.phi[ed.tail] - c.phi[ed.head] + m.quotient().order - 1);
    }
    std::sort(t.plaquettes.begin(), t.plaquettes.end());
    std::sort(t.links.begin(), t.links.end());
    return t;
}

TermMultiset term_multiset(const HiggsModel& m, const HiggsConfig& a, const HiggsConfig& b) {
    TermMultiset t = term_multiset(m, a);
    const TermMultiset u = term_multiset(m, b);
    t.plaquettes.insert(t.plaquettes.end(), u.plaquettes.begin(), u.plaquettes.end());
    t.links.insert(t.links.end(), u.links.begin(), u.links.end());
    std::sort(t.plaquettes.begin(), t.plaquettes.end());
    std::sort(t.links.begin(), t.links.end());
    return t;
}

CellSet excited_edges(const HiggsModel& m, const HiggsConfig& c) {
    check_config(m, c);
    CellSet out;
    for (int e = 0; e < m.complex().edge_count(); ++e) {
        const Edge& ed = m.complex().edge(e);
        if (c.sigma[e] != 0 || c.phi[ed.tail] != c.phi[ed.head]) out.push_back(e);
    }
    return out;
}

CellSet higgs_support(const HiggsModel& m, const HiggsConfig& c) {
    std::vector<int> ps;
    for (int e : excited_edges(m, c))
        for (int p : m.complex().plaquettes_of_edge(e)) ps.push_back(p);
    return make_set(std::move(ps));
}

std::vector<CellSet> phase_boundaries(const CellComplex& cx, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != cx.vertex_count()) throw std::invalid_argument("phase boundaries: size mismatch");
    std::vector<int> slot(cx.edge_count(), -1);
    CellSet D;
    for (int e = 0; e < cx.edge_count(); ++e)
        if (phi[cx.edge(e).tail] != phi[cx.edge(e).head]) {
            slot[e] = static_cast<int>(D.size());
            D.push_back(e);
        }
    UnionFind uf(static_cast<int>(D.size()));
    for (int p = 0; p < cx.plaquette_count(); ++p) {
        int first = -1;
        for (const Step& s : cx.plaquette(p).loop) {
            const int k = slot[s.edge];
            if (k < 0) continue;
            if (first < 0) first = k;
            else uf.unite(first, k);
        }
    }
    std::vector<CellSet> out;
    std::vector<int> comp(D.size(), -1);
    for (std::size_t i = 0; i < D.size(); ++i) {
        const int r = uf.find(static_cast<int>(i));
        if (comp[r] < 0) {
            comp[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[comp[r]].push_back(D[i]);
    }
    return out;
}

std::vector<int> flip_map(const CellComplex& cx, const std::vector<int>& phi, const CellSet& selected) {
    for (int v : phi)
        if (v != 0 && v != 1) throw std::invalid_argument("flip map: phase field is not Z2 valued");
    const std::vector<CellSet> parts = phase_boundaries(cx, phi);
    CellSet covered;
    for (const CellSet& b : parts) {
        const std::size_t hit = set_intersection(b, selected).size();
        if (hit != 0 && hit != b.size()) throw std::invalid_argument("flip map: selection splits a boundary");
        if (hit) covered = set_union(covered, b);
    }
    if (covered != make_set(selected)) throw std::invalid_argument("flip map: selection is not a union of boundaries");

    std::vector<char> keep(cx.edge_count(), 0);
    for (const CellSet& b : parts)
        if (!set_contains(covered, b.front()))
            for (int e : b) keep[e] = 1;
    std::vector<int> target(cx.vertex_count(), -1);
    std::vector<int> queue{0};
    target[0] = phi[0];
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const int x = queue[i];
        for (int e : cx.edges_of_vertex(x)) {
            const Edge& ed = cx.edge(e);
            const int y = ed.tail == x ? ed.head : ed.tail;
            if (target[y] >= 0) continue;
            target[y] = target[x] ^ keep[e];
            queue.push_back(y);
        }
    }
    for (int e = 0; e < cx.edge_count(); ++e) {
        const Edge& ed = cx.edge(e);
        if ((target[ed.tail] ^ target[ed.head]) != keep[e]) throw std::logic_error("flip map: inconsistent boundary set");
    }
    std::vector<int> chi(cx.vertex_count());
    for (int v = 0; v < cx.vertex_count(); ++v) chi[v] = target[v] ^ phi[v];
    return chi;
}

namespace {

int part_holding(const std::vector<CellSet>& parts, const CellSet& B) {
    for (int i = 0; i < static_cast<int>(parts.size()); ++i)
        if (set_contains(parts[i], B.front())) {
            if (!set_subset(B, parts[i])) throw std::logic_error("higgs: box split across components");
            return i;
        }
    throw std::logic_error("higgs: box missing from the joint support");
}

}  // namespace

std::pair<HiggsConfig, HiggsConfig> higgs_swap_large_kappa(const HiggsModel& m, const HiggsConfig& c1,
                                                           const HiggsConfig& c2, const CellSet& B1,
                                                           const CellSet& B2) {
    require_z2(m);
    if (B1.empty() || B2.empty()) throw std::invalid_argument("higgs swap: empty box");
    const CellComplex& cx = m.complex();
    const CellSet joint = set_union(set_union(higgs_support(m, c1), higgs_support(m, c2)),
                                    set_union(make_set(B1), make_set(B2)));
    const std::vector<CellSet> vortices = vortex_decomposition(cx, joint);
    const int v1 = part_holding(vortices, make_set(B1));
    const int v2 = part_holding(vortices, make_set(B2));
    if (v1 == v2) throw std::domain_error("higgs swap: boxes share a vortex");
    const CellSet edges2 = edges_of_plaquettes(cx, vortices[v2]);

    auto boundaries_in = [&](const std::vector<int>& phi) {
        CellSet sel;
        for (const CellSet& b : phase_boundaries(cx, phi)) {
            const std::size_t hit = set_intersection(b, edges2).size();
            if (hit == 0) continue;
            if (hit != b.size()) throw std::logic_error("higgs swap: boundary leaves its vortex");
            sel = set_union(sel, b);
        }
        return sel;
    };
    const std::vector<int> chi1 = flip_map(cx, c1.phi, boundaries_in(c1.phi));
    const std::vector<int> chi2 = flip_map(cx, c2.phi, boundaries_in(c2.phi));

    HiggsConfig a = c1, b = c2;
    for (int e : edges2) std::swap(a.sigma[e], b.sigma[e]);
    for (int v = 0; v < cx.vertex_count(); ++v) {
        a.phi[v] = c1.phi[v] ^ chi1[v] ^ chi2[v];
        b.phi[v] = c2.phi[v] ^ chi2[v] ^ chi1[v];
    }
    return {a, b};
}

double large_kappa_constant(const HiggsModel& m) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.quotient().order; ++a)
        for (int b = 0; b < m.group().order(); ++b)
            if (a != 0 || b != 0) best = std::max(best, m.link(b, a, 0) - m.rep_dim());
    return 2 * best;
}

std::vector<HiggsConfig> higgs_family(const HiggsModel& m, const CellSet& edges, const CellSet& vertices,
                                      std::uint64_t cap) {
    const std::uint64_t n = family_size(m.group().order(), edges.size(), cap) *
                            family_size(m.quotient().order, vertices.size(), cap);
    if (n > cap) throw std::length_error("higgs family exceeds the cap");
    std::vector<HiggsConfig> out;
    out.reserve(n);
    std::vector<int> s(edges.size(), 0);
    do {
        std::vector<int> f(vertices.size(), 0);
        do {
            HiggsConfig c = m.trivial();
            for (std::size_t i = 0; i < edges.size(); ++i) c.sigma[edges[i]] = s[i];
            for (std::size_t i = 0; i < vertices.size(); ++i) c.phi[vertices[i]] = f[i];
            out.push_back(std::move(c));
        } while (advance(f, m.quotient().order));
    } while (advance(s, m.group().order()));
    return out;
}

SupportWeights higgs_large_weights(const HiggsModel& m, const std::vector<HiggsConfig>& family) {
    SupportWeights w;
    for (const HiggsConfig& c : family) {
        double total = 0;
        for (int v : c.phi) total += std::real(m.quotient().phases[v]);
        if (total <= 0) continue;
        w[higgs_support(m, c)] += std::exp(higgs_hamiltonian(m, c));
    }
    return w;
}

double higgs_phi2_large(const HiggsModel& m, const std::vector<HiggsConfig>& family, const CellSet& P0,
                        const CellSet& P) {
    return phi2_from_weights(higgs_large_weights(m, family), P0, P);
}

double higgs_phi2_large_bound(const HiggsModel& m, int p0_size, int p_size) {
    if (p0_size < 0 || p_size < p0_size) throw std::invalid_argument("higgs bound: need 0 <= |P0| <= |P|");
    const double n = p_size;
    const double log_bound = n * std::log(4.0) + 8 * n * std::log(static_cast<double>(m.group().order())) +
                             8 * n * std::log(static_cast<double>(m.quotient().order)) +
                             m.kappa() * large_kappa_constant(m) / 6 * (p_size - p0_size);
    return std::exp(log_bound);
}

double c_constant(const UnitaryRep& rep) { return 2.0 * rep.dim + 1; }

double current_edge_weight(const HiggsModel& m, Element s, int phi_x, int phi_y) {
    return 2 * m.link(s, phi_x, phi_y) + c_constant(m.rep());
}

namespace {

double edge_factor(const HiggsModel& m, Element s, int phi_x, int phi_y, int I) {
    if (I == 0) return 1;
    const double w = current_edge_weight(m, s, phi_x, phi_y);
    if (!(w > 0)) throw std::logic_error("current weight: nonpositive edge weight");
    const double x = m.kappa() * w;
    if (x == 0) return 0;
    return std::exp(I * std::log(x) - std::lgamma(I + 1.0));
}

void check_current(const CellComplex& cx, const std::vector<int>& phi, const CurrentField& I) {
    if (static_cast<int>(I.size()) != cx.edge_count() || static_cast<int>(phi.size()) != cx.vertex_count())
        throw std::invalid_argument("current: size mismatch");
    for (int k : I)
        if (k < 0) throw std::invalid_argument("current: negative value");
}

}  // namespace

double current_weight(const HiggsModel& m, const EdgeConfig& sigma, const std::vector<int>& phi,
                      const CurrentField& I) {
    const CellComplex& cx = m.complex();
    check_current(cx, phi, I);
    double w = 1;
    for (int e = 0; e < cx.edge_count(); ++e)
        if (I[e] != 0) w *= edge_factor(m, sigma[e], phi[cx.edge(e).tail], phi[cx.edge(e).head], I[e]);
    return w;
}

double current_config_weight(const HiggsModel& m, const EdgeConfig& sigma, const std::vector<int>& phi,
                             const CurrentField& I) {
    const CellComplex& cx = m.complex();
    double gauge = 0;
    for (int p = 0; p < cx.plaquette_count(); ++p)
        gauge += std::real(m.rep().chi(plaquette_value(cx, m.group(), sigma, p))) - m.rep_dim();
    return std::exp(m.beta() * gauge) * current_weight(m, sigma, phi, I);
}

double truncated_current_sum(double x, int imax) {
    if (imax < 0) throw std::invalid_argument("current sum: negative truncation");
    double term = 1, sum = 1;
    for (int i = 1; i <= imax; ++i) {
        term *= x / i;
        sum += term;
    }
    return sum;
}

double current_tail_bound(double x, int imax) {
    if (x < 0) throw std::invalid_argument("current tail: negative argument");
    return std::exp((imax + 1) * std::log(x) - std::lgamma(imax + 2.0) + x);
}

CellSet activated_edges(const CurrentField& I) {
    CellSet out;
    for (int e = 0; e < static_cast<int>(I.size()); ++e)
        if (I[e] != 0) out.push_back(e);
    return out;
}

CellSet activated_vertices(const CellComplex& cx, const CurrentField& I) {
    std::vector<int> vs;
    for (int e : activated_edges(I)) {
        vs.push_back(cx.edge(e).tail);
        vs.push_back(cx.edge(e).head);
    }
    return make_set(std::move(vs));
}

CellSet reduced_support(const HomSpace& space, const ReducedConfig& rc) {
    const CellComplex& cx = space.complex();
    std::vector<int> ps = space.support(rc.psi);
    for (int v : activated_vertices(cx, rc.I))
        for (int p : cx.plaquettes_of_vertex(v)) ps.push_back(p);
    return make_set(std::move(ps));
}

namespace {

double plaquette_part(const HomSpace& space, const HiggsModel& m, const Homomorphism& psi) {
    double gauge = 0;
    for (int p = 0; p < space.complex().plaquette_count(); ++p)
        gauge += std::real(m.rep().chi(space.plaquette_image(psi, p))) - m.rep_dim();
    return std::exp(m.beta() * gauge);
}

constexpr std::uint64_t kGaugeCap = std::uint64_t{1} << 24;

// Average over eta of the current factors, one connected cluster of activated edges at a time.
double auxiliary_average(const HiggsModel& m, const EdgeConfig& sigma, const ReducedConfig& rc) {
    const CellComplex& cx = m.complex();
    const GroupTable& g = m.group();
    const CellSet ae = activated_edges(rc.I);
    UnionFind uf(cx.vertex_count());
    for (int e : ae) uf.unite(cx.edge(e).tail, cx.edge(e).head);
    std::vector<std::vector<int>> clusters;
    std::vector<int> slot(cx.vertex_count(), -1);
    for (int e : ae) {
        const int r = uf.find(cx.edge(e).tail);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(clusters.size());
            clusters.emplace_back();
        }
        clusters[slot[r]].push_back(e);
    }
    double result = 1;
    std::vector<int> local(cx.vertex_count(), -1);
    for (const std::vector<int>& edges : clusters) {
        std::vector<int> verts;
        for (int e : edges) {
            verts.push_back(cx.edge(e).tail);
            verts.push_back(cx.edge(e).head);
        }
        verts = make_set(std::move(verts));
        for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
        const std::uint64_t count = checked_power(g.order(), static_cast<int>(verts.size()), kGaugeCap);
        std::vector<int> eta(verts.size(), 0);
        double sum = 0;
        do {
            double w = 1;
            for (int e : edges) {
                const Edge& ed = cx.edge(e);
                const Element s = g.mul(eta[local[ed.tail]], g.mul(sigma[e], g.inv(eta[local[ed.head]])));
                w *= edge_factor(m, s, rc.phi[ed.tail], rc.phi[ed.head], rc.I[e]);
            }
            sum += w;
        } while (advance(eta, g.order()));
        result *= sum / static_cast<double>(count);
    }
    return result;
}

double fiber_average(const HomSpace& space, const HiggsModel& m, const ReducedConfig& rc) {
    const CellComplex& cx = space.complex();
    const GroupTable& g = m.group();
    const EdgeConfig base = space.gauge_fix(rc.psi);
    const int root = space.tree().root;
    const std::uint64_t count = checked_power(g.order(), cx.vertex_count() - 1, kGaugeCap);
    std::vector<int> free(cx.vertex_count() - 1, 0);
    std::vector<Element> h(cx.vertex_count(), 0);
    double sum = 0;
    do {
        for (int v = 0, k = 0; v < cx.vertex_count(); ++v) h[v] = v == root ? 0 : free[k++];
        sum += current_config_weight(m, gauge_transform(cx, g, base, h), rc.phi, rc.I);
    } while (advance(free, g.order()));
    return sum / static_cast<double>(count);
}

}  // namespace

double reduced_weight(const HomSpace& space, const HiggsModel& m, const ReducedConfig& rc, ReducedRoute route) {
    check_current(space.complex(), rc.phi, rc.I);
    if (route == ReducedRoute::Fiber) return fiber_average(space, m, rc);
    return plaquette_part(space, m, rc.psi) * auxiliary_average(m, space.gauge_fix(rc.psi), rc);
}

std::pair<ReducedConfig, ReducedConfig> higgs_swap_small_kappa(const SplitContext& ctx, const HiggsModel& m,
                                                               const ReducedConfig& a, const ReducedConfig& b,
                                                               const CellSet& B1, const CellSet& B2) {
    if (B1.empty() || B2.empty()) throw std::invalid_argument("higgs swap: empty box");
    const HomSpace& space = ctx.base();
    const CellComplex& cx = space.complex();
    const CellSet joint = set_union(set_union(reduced_support(space, a), reduced_support(space, b)),
                                    set_union(make_set(B1), make_set(B2)));
    KnotDecomposition d = ctx.search().decompose(joint);
    const int j1 = part_holding(d.knots, make_set(B1));
    const int j2 = part_holding(d.knots, make_set(B2));
    if (j1 == j2) throw std::domain_error("higgs swap: boxes share a knot");

    auto knot_of_vertex = [&](int v) {
        const auto& ps = cx.plaquettes_of_vertex(v);
        const int k = d.knot_of(ps.front());
        for (int p : ps)
            if (d.knot_of(p) != k) throw std::logic_error("higgs swap: activated vertex touches two knots");
        return k;
    };

    const Theta theta(ctx, joint, d);
    std::vector<Homomorphism> pa = theta.split(a.psi);
    std::vector<Homomorphism> pb = theta.split(b.psi);
    std::swap(pa[j2], pb[j2]);
    ReducedConfig x = a, y = b;
    x.psi = theta.merge(pa);
    y.psi = theta.merge(pb);
    for (int e : set_union(activated_edges(a.I), activated_edges(b.I)))
        if (knot_of_vertex(cx.edge(e).tail) == j2) std::swap(x.I[e], y.I[e]);
    for (int v : set_union(activated_vertices(cx, a.I), activated_vertices(cx, b.I)))
        if (knot_of_vertex(v) == j2) std::swap(x.phi[v], y.phi[v]);
    return {x, y};
}

SmallKappaBound higgs_phi2_small_bound(const HiggsModel& m, int p0_size, int p_size) {
    if (p0_size < 0 || p_size < p0_size) throw std::invalid_argument("higgs bound: need 0 <= |P0| <= |P|");
    const double d = m.rep_dim();
    double gauge_max = -std::numeric_limits<double>::infinity();
    for (int g = 1; g < m.group().order(); ++g) gauge_max = std::max(gauge_max, 2 * (std::real(m.rep().chi(g)) - d));
    double link_max = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.quotient().order; ++a)
        for (int b = 0; b < m.group().order(); ++b)
            if (a != 0 || b != 0) link_max = std::max(link_max, 2 * m.link(b, a, 0) + c_constant(m.rep()));
    SmallKappaBound out;
    out.constant = std::max(std::exp(m.beta() * gauge_max), m.kappa() / 24 * std::exp(link_max));
    out.vacuous = out.constant >= 1;
    const double n = p_size;
    out.value = std::exp(n * std::log(16.0) + 2 * n * std::log(static_cast<double>(m.group().order())) +
                         8 * n * std::log(2.0) + (p_size - p0_size) * std::log(out.constant));
    return out;
}

std::vector<ReducedConfig> reduced_family(const HiggsModel& m, const std::vector<Homomorphism>& psis,
                                          const CellSet& edges, int imax, std::uint64_t cap) {
    if (imax < 0) throw std::invalid_argument("reduced family: negative current cap");
    const CellComplex& cx = m.complex();
    std::vector<ReducedConfig> out;
    for (const Homomorphism& psi : psis) {
        std::vector<int> cur(edges.size(), 0);
        do {
            CurrentField I(cx.edge_count(), 0);
            for (std::size_t i = 0; i < edges.size(); ++i) I[edges[i]] = cur[i];
            const CellSet av = activated_vertices(cx, I);
            if (out.size() + family_size(m.quotient().order, av.size(), cap) > cap)
                throw std::length_error("reduced family exceeds the cap");
            std::vector<int> f(av.size(), 0);
            do {
                ReducedConfig rc{psi, std::vector<int>(cx.vertex_count(), 0), I};
                for (std::size_t i = 0; i < av.size(); ++i) rc.phi[av[i]] = f[i];
                out.push_back(std::move(rc));
            } while (advance(f, m.quotient().order));
        } while (advance(cur, imax + 1));
    }
    return out;
}

SupportWeights higgs_small_weights(const HomSpace& space, const HiggsModel& m, const std::vector<ReducedConfig>& family) {
    SupportWeights w;
    const double q = m.quotient().order;
    for (const ReducedConfig& rc : family) {
        const double av = static_cast<double>(activated_vertices(space.complex(), rc.I).size());
        w[reduced_support(space, rc)] += reduced_weight(space, m, rc) * std::pow(q, -av);
    }
    return w;
}

double higgs_phi2_small(const HomSpace& space, const HiggsModel& m, const std::vector<ReducedConfig>& family,
                        const CellSet& P0, const CellSet& P) {
    return phi2_from_weights(higgs_small_weights(space, m, family), P0, P);
}

}  // namespace lgt
