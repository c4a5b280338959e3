#include "lgt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "lgt/gibbs.hpp"
#include "lgt/higgs.hpp"
#include "lgt/homomorphism.hpp"
#include "lgt/swap.hpp"
#include "lgt/topology.hpp"

namespace lgt {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CheckRow row(std::string instance, std::string check, bool pass, long long witness, std::string value) {
    return {std::move(instance), std::move(check), pass, pass ? -1 : witness, std::move(value)};
}

Coord at(int x, int y, int z = 0) { return Coord{x, y, z, 0}; }

int vertex(const CellComplex& cx, const Coord& x) {
    const int v = cx.vertex_index(x);
    if (v < 0) throw std::logic_error("verify: vertex outside the lattice");
    return v;
}

int edge_at(const CellComplex& cx, const Coord& x, int axis) {
    const int e = cx.edge_index(vertex(cx, x), axis);
    if (e < 0) throw std::logic_error("verify: edge outside the lattice");
    return e;
}

int plaq_at(const CellComplex& cx, const Coord& x, int mu, int nu) {
    const int p = cx.plaquette_index(vertex(cx, x), mu, nu);
    if (p < 0) throw std::logic_error("verify: plaquette outside the lattice");
    return p;
}

CellSet star(const CellComplex& cx, int e) { return make_set(cx.plaquettes_of_edge(e)); }

double rel_err(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0 : std::abs(a - b) / s;
}

// Every subset of s, as sorted sets.
std::vector<CellSet> subsets(const CellSet& s) {
    std::vector<CellSet> out;
    const std::uint64_t n = std::uint64_t{1} << s.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        CellSet t;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask >> i & 1) t.push_back(s[i]);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Homomorphism> all_homs(const HomSpace& space, std::uint64_t cap) {
    const std::uint64_t n = space.omega_size(cap);
    std::vector<Homomorphism> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(space.decode(i));
    return out;
}

CellSet all_plaquettes(const CellComplex& cx) {
    CellSet s(cx.plaquette_count());
    for (int p = 0; p < cx.plaquette_count(); ++p) s[p] = p;
    return s;
}

}  // namespace

std::vector<CheckRow> check_fiber_counts(const VerifyOptions& opt) {
    const CellComplex cx(Box::cube(2, 2));
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const std::uint64_t homs = space.omega_size(opt.cap);
    const std::uint64_t configs = checked_power(gr.group.order(), cx.edge_count(), opt.cap);
    std::vector<std::uint64_t> count(homs, 0);
    for (std::uint64_t i = 0; i < configs; ++i)
        ++count[space.encode(space.psi_of_config(decode_config(i, cx.edge_count(), gr.group.order())))];
    const std::uint64_t expected = checked_power(gr.group.order(), cx.vertex_count() - 1, opt.cap);
    long long witness = -1;
    for (std::uint64_t k = 0; k < homs && witness < 0; ++k)
        if (count[k] != expected) witness = static_cast<long long>(k);
    const bool pass = witness < 0 && homs == 16 && expected == 256;
    return {row("square2_z2", "fiber_count", pass, witness < 0 ? 0 : witness,
                "homs=" + std::to_string(homs) + " preimages=" + std::to_string(expected))};
}

std::vector<CheckRow> check_pushforward(const VerifyOptions& opt) {
    const CellComplex cx(Box::cube(2, 2));
    const GroupWithRep gr = builtin_group("cyclic", 2);
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    std::vector<CheckRow> rows;
    for (double beta : {0.0, 0.3, 1.0}) {
        const GibbsSpec spec(cx, gr.group, gr.rep, beta);
        const ExactDistribution mu = enumerate_mu(spec, opt.cap);
        const NuDistribution nu = enumerate_nu(space, spec, opt.cap);
        std::vector<double> push(nu.prob.size(), 0.0);
        for (std::uint64_t i = 0; i < mu.prob.size(); ++i) push[space.encode(space.psi_of_config(mu.config(i)))] += mu.prob[i];
        double tv = 0;
        long long worst = 0;
        double worst_gap = -1;
        for (std::size_t k = 0; k < push.size(); ++k) {
            const double d = std::abs(push[k] - nu.prob[k]);
            tv += d;
            if (d > worst_gap) worst_gap = d, worst = static_cast<long long>(k);
        }
        tv /= 2;
        rows.push_back(row("square2_z2_beta" + num(beta), "pushforward_tv", tv < 1e-12, worst, "tv=" + num(tv)));
    }
    return rows;
}

std::vector<CheckRow> check_observable_transfer(const VerifyOptions& opt) {
    const CellComplex cx(Box::cube(2, 2));
    std::vector<CheckRow> rows;
    for (int n : {2, 3}) {
        const GroupWithRep gr = builtin_group("cyclic", n);
        const GroupTable& g = gr.group;
        const HomSpace space(cx, g, spanning_tree(cx));
        const std::vector<int> cls = class_index(g);
        const int classes = static_cast<int>(conjugacy_classes(g).size());
        std::vector<Loop> loops;
        std::vector<GeneratorWord> words;
        for (int p = 0; p < cx.plaquette_count(); ++p) {
            loops.push_back(plaquette_loop(cx, p));
            words.push_back(xi_of_loop(cx, space.tree(), loops.back()));
        }
        for (double beta : {0.0, 0.3, 1.0}) {
            const GibbsSpec spec(cx, g, gr.rep, beta);
            const ExactDistribution mu = enumerate_mu(spec, opt.cap);
            const NuDistribution nu = enumerate_nu(space, spec, opt.cap);
            const std::size_t np = loops.size();
            // per loop: class indicators, then the real and imaginary parts of the character
            const int width = classes + 2;
            std::vector<long double> lhs(np * width, 0.0), rhs(np * width, 0.0);
            auto add = [&](std::vector<long double>& acc, std::size_t p, Element h, double w) {
                acc[p * width + cls[h]] += w;
                acc[p * width + classes] += w * std::real(gr.rep.chi(h));
                acc[p * width + classes + 1] += w * std::imag(gr.rep.chi(h));
            };
            for (std::uint64_t i = 0; i < mu.prob.size(); ++i) {
                const EdgeConfig sigma = mu.config(i);
                for (std::size_t p = 0; p < np; ++p) add(lhs, p, holonomy(cx, g, sigma, loops[p]), mu.prob[i]);
            }
            for (std::uint64_t k = 0; k < nu.prob.size(); ++k) {
                const Homomorphism psi = space.decode(k);
                for (std::size_t p = 0; p < np; ++p) add(rhs, p, space.evaluate(psi, words[p]), nu.prob[k]);
            }
            double worst = 0;
            long long witness = 0;
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                const double d = static_cast<double>(std::abs(lhs[i] - rhs[i]));
                if (d > worst) worst = d, witness = static_cast<long long>(i / width);
            }
            rows.push_back(row("square2_z" + std::to_string(n) + "_beta" + num(beta), "observable_transfer",
                               worst <= 1e-12, witness, "max_err=" + num(worst)));
        }
    }
    return rows;
}

namespace {

struct SwapInstance {
    std::string name;
    const HomSpace* space;
    const GibbsSpec* spec;
    std::vector<Homomorphism> family;  // closed under the swap
    std::vector<std::pair<int, int>> boxes;  // singleton B1, B2
};

// Real class functions used for h1 and h2: class indicators and the real character.
std::vector<std::vector<double>> test_functions(const GroupTable& g, const UnitaryRep& rep) {
    const std::vector<int> cls = class_index(g);
    const int classes = static_cast<int>(conjugacy_classes(g).size());
    std::vector<std::vector<double>> out;
    for (int c = 0; c < classes; ++c) {
        std::vector<double> f(g.order());
        for (int h = 0; h < g.order(); ++h) f[h] = cls[h] == c ? 1.0 : 0.0;
        out.push_back(std::move(f));
    }
    std::vector<double> f(g.order());
    for (int h = 0; h < g.order(); ++h) f[h] = std::real(rep.chi(h));
    out.push_back(std::move(f));
    return out;
}

double sup_abs(const std::vector<double>& f) {
    double s = 0;
    for (double v : f) s = std::max(s, std::abs(v));
    return s;
}

void run_swap_instance(const SwapInstance& inst, bool fault, std::vector<CheckRow>& rows) {
    const HomSpace& space = *inst.space;
    const GroupTable& g = space.group();
    const SplitContext ctx(space);
    const std::vector<int> cls = class_index(g);
    const std::vector<std::vector<double>> fs = test_functions(g, inst.spec->rep());
    const std::size_t n = inst.family.size();
    std::map<Homomorphism, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(inst.family[i], i);
    std::vector<double> w(n);
    double z = 0;
    for (std::size_t i = 0; i < n; ++i) z += w[i] = nu_weight(space, *inst.spec, inst.family[i]);
    for (double& x : w) x /= z;

    // Theta round trip on every member, with the boxes of the first pair added to the support.
    long long theta_witness = -1;
    {
        const auto [q1, q2] = inst.boxes.front();
        for (std::size_t i = 0; i < n && theta_witness < 0; ++i) {
            Theta th(ctx, set_union(space.support(inst.family[i]), make_set({q1, q2})));
            th.inject_fault(fault);
            try {
                if (th.merge(th.split(inst.family[i])) != inst.family[i]) theta_witness = static_cast<long long>(i);
            } catch (const std::exception&) {
                theta_witness = static_cast<long long>(i);
            }
        }
    }
    rows.push_back(row(inst.name, "theta_roundtrip", theta_witness < 0, theta_witness,
                       "members=" + std::to_string(n)));

    long long inv_w = -1, supp_w = -1, weight_w = -1, closure_w = -1;
    double exchange_err = 0, cov_excess = -INFINITY, cov_identity_err = 0;
    long long exchange_w = -1, cov_w = -1;
    std::size_t in_e = 0, pairs = 0;
    double worst_ratio = 0;
    for (std::size_t bi = 0; bi < inst.boxes.size(); ++bi) {
        const auto [p1, p2] = inst.boxes[bi];
        SwapMap T(ctx, {p1}, {p2});
        T.inject_fault(fault);
        std::vector<Element> at1(n), at2(n);
        for (std::size_t i = 0; i < n; ++i) {
            at1[i] = space.plaquette_image(inst.family[i], p1);
            at2[i] = space.plaquette_image(inst.family[i], p2);
        }
        const std::size_t nf = fs.size();
        std::vector<double> lhs(nf * nf, 0.0), rhs(nf * nf, 0.0), off(nf * nf, 0.0);
        double not_e = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const long long id = static_cast<long long>((bi * n + i) * n + j);
                ++pairs;
                const Homomorphism& a = inst.family[i];
                const Homomorphism& b = inst.family[j];
                const PairState st = T.pair_state(a, b);
                const double ww = w[i] * w[j];
                if (!st.in_E) {
                    not_e += ww;
                    for (std::size_t u = 0; u < nf; ++u)
                        for (std::size_t v = 0; v < nf; ++v)
                            off[u * nf + v] += ww * fs[u][at1[i]] * (fs[v][at2[i]] - fs[v][at2[j]]);
                    continue;
                }
                ++in_e;
                for (std::size_t u = 0; u < nf; ++u)
                    for (std::size_t v = 0; v < nf; ++v) {
                        lhs[u * nf + v] += ww * fs[u][at1[i]] * fs[v][at2[i]];
                        rhs[u * nf + v] += ww * fs[u][at1[i]] * fs[v][at2[j]];
                    }
                std::pair<Homomorphism, Homomorphism> t;
                try {
                    t = T.swap_T(a, b);
                } catch (const std::exception&) {
                    if (inv_w < 0) inv_w = id;
                    continue;
                }
                if (closure_w < 0 && (!index.count(t.first) || !index.count(t.second))) closure_w = id;
                bool back_ok = false;
                try {
                    back_ok = T.swap_T(t.first, t.second) == std::make_pair(a, b);
                } catch (const std::exception&) {
                }
                if (!back_ok && inv_w < 0) inv_w = id;
                if (supp_w < 0 && T.pair_state(t.first, t.second).joint != st.joint) supp_w = id;
                if (weight_w < 0 && class_multiset(space, cls, a, b) != class_multiset(space, cls, t.first, t.second))
                    weight_w = id;
            }
        for (std::size_t u = 0; u < nf; ++u)
            for (std::size_t v = 0; v < nf; ++v) {
                const double d = std::abs(lhs[u * nf + v] - rhs[u * nf + v]);
                if (d > exchange_err) exchange_err = d, exchange_w = static_cast<long long>(bi);
                double e1 = 0, e2 = 0, e12 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    e1 += w[i] * fs[u][at1[i]];
                    e2 += w[i] * fs[v][at2[i]];
                    e12 += w[i] * fs[u][at1[i]] * fs[v][at2[i]];
                }
                const double cov = e12 - e1 * e2;
                const double bound = covariance_bound(sup_abs(fs[u]), sup_abs(fs[v]), std::min(1.0, not_e));
                // rounding allowance only: both sides come from the same exact sums
                const double excess = std::abs(cov) - bound * (1 + 1e-12) - 1e-15;
                if (excess > cov_excess) cov_excess = excess;
                if (excess > 0 && cov_w < 0) cov_w = static_cast<long long>(bi);
                if (bound > 0) worst_ratio = std::max(worst_ratio, std::abs(cov) / bound);
                cov_identity_err = std::max(cov_identity_err, std::abs(cov - off[u * nf + v]));
            }
    }
    const std::string counts = "pairs=" + std::to_string(pairs) + " in_E=" + std::to_string(in_e);
    rows.push_back(row(inst.name, "swap_involution", inv_w < 0 && closure_w < 0, inv_w >= 0 ? inv_w : closure_w, counts));
    rows.push_back(row(inst.name, "swap_support", supp_w < 0, supp_w, counts));
    rows.push_back(row(inst.name, "swap_weight", weight_w < 0, weight_w, counts));
    rows.push_back(row(inst.name, "swap_exchange", exchange_err <= 1e-12, exchange_w, "max_err=" + num(exchange_err)));
    rows.push_back(row(inst.name, "cov_bound", cov_w < 0 && cov_identity_err <= 1e-12, std::max(cov_w, 0LL),
                       "max_ratio=" + num(worst_ratio) + " identity_err=" + num(cov_identity_err)));
}

}  // namespace

std::vector<CheckRow> check_swap(const VerifyOptions& opt) {
    std::vector<CheckRow> rows;
    const GroupWithRep gr = builtin_group("cyclic", 2);
    {
        const CellComplex cx(Box::cube(3, 1));
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        const GibbsSpec spec(cx, gr.group, gr.rep, 0.7);
        SwapInstance inst{"cube1_z2", &space, &spec, all_homs(space, opt.cap), {}};
        for (int p1 = 0; p1 < cx.plaquette_count(); ++p1)
            for (int p2 = 0; p2 < cx.plaquette_count(); ++p2)
                if (p1 != p2) inst.boxes.emplace_back(p1, p2);
        run_swap_instance(inst, opt.inject_fault, rows);
    }
    {
        // homomorphisms supported on two opposite corner cubes
        const CellComplex cx(Box::cube(3, 2));
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        const GibbsSpec spec(cx, gr.group, gr.rep, 0.7);
        Box near{3, at(0, 0, 0), at(1, 1, 1)}, far{3, at(1, 1, 1), at(2, 2, 2)};
        const CellSet allowed = set_union(plaquettes_in_box(cx, near), plaquettes_in_box(cx, far));
        SwapInstance inst{"cube2_z2_corners", &space, &spec, solve_support_constraints(space, allowed, opt.cap), {}};
        const int a[3] = {plaq_at(cx, at(0, 0, 0), 0, 1), plaq_at(cx, at(0, 0, 0), 0, 2), plaq_at(cx, at(0, 0, 0), 1, 2)};
        const int b[3] = {plaq_at(cx, at(1, 1, 2), 0, 1), plaq_at(cx, at(1, 2, 1), 0, 2), plaq_at(cx, at(2, 1, 1), 1, 2)};
        for (int p1 : a)
            for (int p2 : b) inst.boxes.emplace_back(p1, p2);
        run_swap_instance(inst, opt.inject_fault, rows);
    }
    return rows;
}

std::vector<CheckRow> check_peierls(const VerifyOptions& opt) {
    std::vector<CheckRow> rows;
    const GroupWithRep gr = builtin_group("cyclic", 2);

    // factorization over well-separated edge stars on [0,2]^3
    {
        const CellComplex cx(Box::cube(3, 2));
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        const SeparatorSearch search(cx);
        struct Pair {
            const char* name;
            Coord x1;
            int a1;
            Coord x2;
            int a2;
        };
        const Pair pairs[] = {
            {"corner_stars", at(0, 0, 0), 1, at(2, 1, 2), 1},
            {"column_stars", at(1, 1, 0), 2, at(1, 1, 1), 2},
            {"face_stars", at(1, 0, 0), 2, at(1, 0, 1), 2},
        };
        for (double beta : {1.0, 2.0}) {
            const GibbsSpec spec(cx, gr.group, gr.rep, beta);
            for (const Pair& pr : pairs) {
                const CellSet P1 = star(cx, edge_at(cx, pr.x1, pr.a1));
                const CellSet P2 = star(cx, edge_at(cx, pr.x2, pr.a2));
                const CellSet P = set_union(P1, P2);
                const std::string inst = std::string("cube2_z2_") + pr.name + "_beta" + num(beta);
                bool separated = false;
                for (const Box& b : search.candidates())
                    if (well_separates(cx, b, P1, P2) || well_separates(cx, b, P2, P1)) separated = true;
                const SupportWeights w = support_weights(space, spec, solve_support_constraints(space, P, opt.cap));
                const SupportWeights w1 = support_weights(space, spec, solve_support_constraints(space, P1, opt.cap));
                const SupportWeights w2 = support_weights(space, spec, solve_support_constraints(space, P2, opt.cap));
                double worst = 0;
                long long witness = 0;
                long long k = 0;
                for (const CellSet& P0 : subsets(P)) {
                    const double whole = phi2_from_weights(w, P0, P);
                    const double split = phi2_from_weights(w1, set_intersection(P0, P1), P1) *
                                         phi2_from_weights(w2, set_intersection(P0, P2), P2);
                    const double e = rel_err(whole, split);
                    if (e > worst) worst = e, witness = k;
                    ++k;
                }
                rows.push_back(row(inst, "phi2_factorization", separated && worst <= 1e-10, witness,
                                   "subsets=" + std::to_string(k) + " max_rel_err=" + num(worst) +
                                       (separated ? "" : " not_separated")));
            }
        }
    }

    // polymer bound, every P0 within P within the plaquettes of [0,1]^3
    {
        const CellComplex cx(Box::cube(3, 1));
        const HomSpace space(cx, gr.group, spanning_tree(cx));
        const std::vector<Homomorphism> homs = all_homs(space, opt.cap);
        for (double beta : {1.0, 2.0}) {
            const GibbsSpec spec(cx, gr.group, gr.rep, beta);
            const SupportWeights w = support_weights(space, spec, homs);
            long long witness = -1, k = 0;
            double worst_ratio = 0;
            for (const CellSet& P : subsets(all_plaquettes(cx)))
                for (const CellSet& P0 : subsets(P)) {
                    const double v = phi2_from_weights(w, P0, P);
                    const double bound = phi2_upper(spec, P0, P);
                    worst_ratio = std::max(worst_ratio, v / bound);
                    if (v > bound && witness < 0) witness = k;
                    ++k;
                }
            rows.push_back(row("cube1_z2_beta" + num(beta), "phi2_bound", witness < 0, witness,
                               "pairs=" + std::to_string(k) + " max_ratio=" + num(worst_ratio)));
        }
    }

    // knot-size floor for knots of size <= 4 through separated singletons
    {
        struct Floor {
            int side;
            Coord x1;
            int mu1, nu1;
            Coord x2;
            int mu2, nu2;
        };
        const Floor cases[] = {
            {2, at(0, 0, 0), 0, 1, at(0, 0, 2), 0, 1},
            {2, at(1, 1, 0), 0, 1, at(0, 0, 2), 0, 1},
            {2, at(0, 0, 0), 1, 2, at(2, 1, 1), 1, 2},
            {3, at(1, 1, 0), 0, 1, at(1, 1, 3), 0, 1},
        };
        long long idx = 0;
        for (const Floor& c : cases) {
            const CellComplex cx(Box::cube(3, c.side));
            const SeparatorSearch search(cx);
            const int p1 = plaq_at(cx, c.x1, c.mu1, c.nu1);
            const int p2 = plaq_at(cx, c.x2, c.mu2, c.nu2);
            const Box b1 = plaquette_box(cx, p1), b2 = plaquette_box(cx, p2);
            int L = 0;
            for (int i = 0; i < 3; ++i) L = std::max({L, b2.lo[i] - b1.hi[i], b1.lo[i] - b2.hi[i]});
            const bool separated = search.first_split(make_set({p1, p2})).has_value();
            std::size_t through = 0;
            long long witness = -1;
            for (int m = 1; m <= 4; ++m)
                for (const CellSet& K : enumerate_knots_containing(search, p1, m)) {
                    if (!set_contains(K, p2)) continue;
                    ++through;
                    if (!knot_size_floor({p1}, {p2}, L, K) && witness < 0) witness = idx;
                }
            rows.push_back(row("cube" + std::to_string(c.side) + "_pair" + std::to_string(idx), "knot_floor",
                               separated && witness < 0, idx,
                               "L=" + std::to_string(L) + " knots_through_both=" + std::to_string(through) +
                                   (separated ? "" : " not_separated")));
            ++idx;
        }
    }
    return rows;
}

std::vector<CheckRow> check_bound_formulas(const VerifyOptions&) {
    std::vector<CheckRow> rows;
    const GroupWithRep z2 = builtin_group("cyclic", 2);
    const GroupWithRep z3 = builtin_group("cyclic", 3);
    const double t = beta_threshold(z2.group, z2.rep);
    rows.push_back(row("z2_sign", "threshold", std::abs(t - 58.386) <= 1e-3, 0, "beta_threshold=" + num(t)));

    // log of 2 (4e24 |G|^2)^(|B1|+|B2|) exp(-(beta/2) delta (L-1)), written out by hand
    struct Fixture {
        const char* name;
        const GroupWithRep* gr;
        double beta;
        int b1, b2, L;
        double hand_log_p_out;
    };
    const Fixture fixtures[] = {
        {"z2_beta60_L1", &z2, 60, 1, 1, 1, std::log(5.12e50)},
        {"z2_beta100_L11", &z2, 100, 1, 1, 11, std::log(5.12e50) - 1000},
        {"z3_beta80_L5", &z3, 80, 1, 2, 5, std::log(2.0) + 3 * std::log(3.6e25) - 240},
    };
    for (const Fixture& f : fixtures) {
        const PeierlsBounds b = percolation_and_theorem_bounds(f.gr->group, f.gr->rep, f.beta, f.b1, f.b2, f.L);
        const double hand_cov = f.hand_log_p_out + std::log(2.0);
        const bool ok = rel_err(b.log_p_out, f.hand_log_p_out) <= 1e-12 && rel_err(b.log_covariance, hand_cov) <= 1e-12 &&
                        rel_err(b.p_out, std::exp(f.hand_log_p_out)) <= 1e-12;
        rows.push_back(row(f.name, "closed_forms", ok, 0,
                           "log_p_out=" + num(b.log_p_out) + " hand=" + num(f.hand_log_p_out)));
    }
    return rows;
}

std::vector<CheckRow> check_higgs_large(const VerifyOptions& opt) {
    std::vector<CheckRow> rows;
    const GroupWithRep gr = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 2));
    const HiggsQuotient q = quotient_by_Ht(gr.group, gr.rep, 2);
    const HiggsModel m2(cx, gr.group, gr.rep, q, 1.0, 2.0);
    const HiggsModel m4(cx, gr.group, gr.rep, q, 1.0, 4.0);
    const int ea = edge_at(cx, at(0, 0, 0), 0);
    const int eb = edge_at(cx, at(1, 2, 2), 0);
    const CellSet edges = make_set({ea, eb});
    const CellSet vertices = make_set({vertex(cx, at(0, 0, 0)), vertex(cx, at(2, 2, 2))});
    const std::vector<HiggsConfig> family = higgs_family(m2, edges, vertices, opt.cap);
    const CellSet B1{plaq_at(cx, at(0, 0, 0), 0, 1)};
    const CellSet B2{plaq_at(cx, at(1, 1, 2), 0, 1)};
    const std::string inst = "cube2_s3_z2_capped";
    const std::size_t n = family.size();

    auto joint = [&](const HiggsConfig& a, const HiggsConfig& b) {
        return set_union(set_union(higgs_support(m2, a), higgs_support(m2, b)), set_union(B1, B2));
    };
    auto same = [](const HiggsConfig& a, const HiggsConfig& b) { return a.sigma == b.sigma && a.phi == b.phi; };
    long long inv_w = -1, supp_w = -1, ham_w = -1;
    double ham_err = 0;
    std::size_t admissible = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const long long id = static_cast<long long>(i * n + j);
            const HiggsConfig& a = family[i];
            const HiggsConfig& b = family[j];
            std::pair<HiggsConfig, HiggsConfig> t;
            try {
                t = higgs_swap_large_kappa(m2, a, b, B1, B2);
            } catch (const std::domain_error&) {
                continue;  // boxes share a vortex
            } catch (const std::exception&) {
                if (inv_w < 0) inv_w = id;
                continue;
            }
            ++admissible;
            bool back = false;
            try {
                const auto u = higgs_swap_large_kappa(m2, t.first, t.second, B1, B2);
                back = same(u.first, a) && same(u.second, b);
            } catch (const std::exception&) {
            }
            if (!back && inv_w < 0) inv_w = id;
            if (supp_w < 0 && joint(a, b) != joint(t.first, t.second)) supp_w = id;
            if (ham_w < 0 && term_multiset(m2, a, b) != term_multiset(m2, t.first, t.second)) ham_w = id;
            for (const HiggsModel* m : {&m2, &m4}) {
                const double before = higgs_hamiltonian(*m, a) + higgs_hamiltonian(*m, b);
                const double after = higgs_hamiltonian(*m, t.first) + higgs_hamiltonian(*m, t.second);
                ham_err = std::max(ham_err, std::abs(before - after));
            }
        }
    const std::string counts = "configs=" + std::to_string(n) + " admissible_pairs=" + std::to_string(admissible);
    rows.push_back(row(inst, "higgs_large_involution", inv_w < 0 && admissible > 0, std::max(inv_w, 0LL), counts));
    rows.push_back(row(inst, "higgs_large_support", supp_w < 0, supp_w, counts));
    rows.push_back(row(inst, "higgs_large_hamiltonian", ham_w < 0 && ham_err <= 1e-12, std::max(ham_w, 0LL),
                       counts + " max_err=" + num(ham_err)));

    const CellSet P0 = set_union(B1, B2);
    for (const HiggsModel* m : {&m2, &m4}) {
        const SupportWeights w = higgs_large_weights(*m, family);
        std::vector<CellSet> targets;
        for (const auto& [s1, w1] : w)
            for (const auto& [s2, w2] : w) targets.push_back(set_union(set_union(s1, s2), P0));
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        long long witness = -1;
        double worst = 0;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const double v = phi2_from_weights(w, P0, targets[k]);
            const double bound = higgs_phi2_large_bound(*m, static_cast<int>(P0.size()), static_cast<int>(targets[k].size()));
            worst = std::max(worst, v / bound);
            if (v > bound && witness < 0) witness = static_cast<long long>(k);
        }
        rows.push_back(row(inst + "_kappa" + num(m->kappa()), "higgs_large_phi2_bound", witness < 0, witness,
                           "c=" + num(large_kappa_constant(*m)) + " supports=" + std::to_string(targets.size()) +
                               " max_ratio=" + num(worst)));
    }
    return rows;
}

namespace {

bool same_reduced(const ReducedConfig& a, const ReducedConfig& b) {
    return a.psi == b.psi && a.phi == b.phi && a.I == b.I;
}

void higgs_fiber_rows(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const GroupTable& g = gr.group;
    const CellComplex cx(Box::cube(2, 2));
    const HomSpace space(cx, g, spanning_tree(cx));
    const HiggsModel m(cx, g, gr.rep, quotient_by_Ht(g, gr.rep, 2), 0.5, 0.3);
    const int e0 = edge_at(cx, at(0, 0), 0);
    const int e1 = edge_at(cx, at(0, 0), 1);
    const int e2 = edge_at(cx, at(1, 0), 1);
    const int e3 = edge_at(cx, at(0, 1), 0);
    struct Case {
        std::vector<int> edges;
        std::vector<std::pair<Coord, int>> phi;
    };
    const std::vector<Case> cases = {
        {{}, {}},
        {{e0}, {{at(0, 0), 1}}},
        {{e0, e1}, {{at(1, 0), 1}}},
        {{e0, e1, e2, e3}, {{at(0, 0), 1}, {at(1, 1), 1}}},
    };
    const std::uint64_t configs = checked_power(g.order(), cx.edge_count(), opt.cap);
    const double fiber = static_cast<double>(checked_power(g.order(), cx.vertex_count() - 1, opt.cap));
    // each configuration's homomorphism index, shared by every case
    std::vector<std::uint32_t> hom_of(configs);
    for (std::uint64_t i = 0; i < configs; ++i)
        hom_of[i] = static_cast<std::uint32_t>(space.encode(space.psi_of_config(decode_config(i, cx.edge_count(), g.order()))));
    const std::uint64_t homs = space.omega_size(opt.cap);
    double worst = 0;
    long long witness = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        CurrentField I(cx.edge_count(), 0);
        for (int e : cases[k].edges) I[e] = 1;
        std::vector<int> phi(cx.vertex_count(), 0);
        for (const auto& [x, v] : cases[k].phi) phi[vertex(cx, x)] = v;
        std::vector<double> brute(homs, 0.0);
        for (std::uint64_t i = 0; i < configs; ++i)
            brute[hom_of[i]] += current_config_weight(m, decode_config(i, cx.edge_count(), g.order()), phi, I);
        for (std::uint64_t h = 0; h < homs; ++h) {
            const ReducedConfig rc{space.decode(h), phi, I};
            const double aux = reduced_weight(space, m, rc, ReducedRoute::Auxiliary);
            const double fib = reduced_weight(space, m, rc, ReducedRoute::Fiber);
            const double b = brute[h] / fiber;
            const double e = std::max({rel_err(aux, b), rel_err(fib, b), rel_err(aux, fib)});
            if (e > worst) worst = e, witness = static_cast<long long>(k * homs + h);
        }
    }
    rows.push_back(row("square2_z3_z2", "higgs_small_fiber", worst <= 1e-10, witness,
                       "cases=" + std::to_string(cases.size()) + " max_rel_err=" + num(worst)));
}

void higgs_knot_rows(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const GroupTable& g = gr.group;
    const CellComplex cx(Box::cube(3, 2));
    const HomSpace space(cx, g, spanning_tree(cx));
    const HiggsModel m(cx, g, gr.rep, quotient_by_Ht(g, gr.rep, 2), 0.5, 0.3);
    const int ea = edge_at(cx, at(0, 0, 0), 0), ea2 = edge_at(cx, at(0, 0, 0), 1);
    const int eb = edge_at(cx, at(1, 2, 2), 0), eb2 = edge_at(cx, at(2, 1, 2), 1);
    const CellSet B1{plaq_at(cx, at(0, 0, 0), 0, 1)};
    const CellSet B2{plaq_at(cx, at(1, 1, 2), 0, 1)};
    const std::string inst = "cube2_z3_z2_capped";

    // factorization of the reduced weight across the two corners
    {
        double worst = 0;
        long long witness = 0, k = 0;
        for (int sa = 0; sa < g.order(); ++sa)
            for (int sb = 0; sb < g.order(); ++sb)
                for (int ia = 0; ia <= 1; ++ia)
                    for (int ib = 0; ib <= 1; ++ib)
                        for (int fa = 0; fa < (ia ? 4 : 1); ++fa)
                            for (int fb = 0; fb < (ib ? 4 : 1); ++fb) {
                                EdgeConfig s1(cx.edge_count(), 0), s2(cx.edge_count(), 0), s(cx.edge_count(), 0);
                                s1[ea] = s[ea] = sa;
                                s2[eb] = s[eb] = sb;
                                ReducedConfig near{space.psi_of_config(s1), std::vector<int>(cx.vertex_count(), 0),
                                                   CurrentField(cx.edge_count(), 0)};
                                ReducedConfig far = near;
                                far.psi = space.psi_of_config(s2);
                                if (ia) {
                                    near.I[ea2] = 1;
                                    near.phi[cx.edge(ea2).tail] = fa & 1;
                                    near.phi[cx.edge(ea2).head] = fa >> 1;
                                }
                                if (ib) {
                                    far.I[eb2] = 1;
                                    far.phi[cx.edge(eb2).tail] = fb & 1;
                                    far.phi[cx.edge(eb2).head] = fb >> 1;
                                }
                                ReducedConfig both{space.psi_of_config(s), near.phi, near.I};
                                for (int v = 0; v < cx.vertex_count(); ++v) both.phi[v] |= far.phi[v];
                                for (int e = 0; e < cx.edge_count(); ++e) both.I[e] += far.I[e];
                                const double whole = reduced_weight(space, m, both);
                                const double split = reduced_weight(space, m, near) * reduced_weight(space, m, far);
                                const double e = rel_err(whole, split);
                                if (e > worst) worst = e, witness = k;
                                ++k;
                            }
        rows.push_back(row(inst, "higgs_small_factorization", worst <= 1e-10, witness,
                           "cases=" + std::to_string(k) + " max_rel_err=" + num(worst)));
    }

    // T-hat on every pair of a capped reduced family
    {
        const SplitContext ctx(space);
        const std::vector<Homomorphism> psis =
            solve_support_constraints(space, set_union(star(cx, ea), star(cx, eb)), opt.cap);
        const std::vector<ReducedConfig> family = reduced_family(m, psis, make_set({ea2, eb2}), 1, opt.cap);
        std::vector<double> w(family.size());
        std::vector<CellSet> supp(family.size());
        for (std::size_t i = 0; i < family.size(); ++i) {
            w[i] = reduced_weight(space, m, family[i]);
            supp[i] = reduced_support(space, family[i]);
        }
        const CellSet boxes = set_union(B1, B2);
        const std::size_t n = family.size();
        long long inv_w = -1, supp_w = -1, wt_w = -1;
        double wt_err = 0;
        std::size_t admissible = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const long long id = static_cast<long long>(i * n + j);
                std::pair<ReducedConfig, ReducedConfig> t;
                try {
                    t = higgs_swap_small_kappa(ctx, m, family[i], family[j], B1, B2);
                } catch (const std::domain_error&) {
                    continue;  // boxes share a knot
                } catch (const std::exception&) {
                    if (inv_w < 0) inv_w = id;
                    continue;
                }
                ++admissible;
                bool back = false;
                try {
                    const auto u = higgs_swap_small_kappa(ctx, m, t.first, t.second, B1, B2);
                    back = same_reduced(u.first, family[i]) && same_reduced(u.second, family[j]);
                } catch (const std::exception&) {
                }
                if (!back && inv_w < 0) inv_w = id;
                const CellSet before = set_union(set_union(supp[i], supp[j]), boxes);
                const CellSet after = set_union(
                    set_union(reduced_support(space, t.first), reduced_support(space, t.second)), boxes);
                if (before != after && supp_w < 0) supp_w = id;
                const double e =
                    rel_err(w[i] * w[j], reduced_weight(space, m, t.first) * reduced_weight(space, m, t.second));
                if (e > wt_err) wt_err = e;
                if (e > 1e-10 && wt_w < 0) wt_w = id;
            }
        const std::string counts = "configs=" + std::to_string(n) + " admissible_pairs=" + std::to_string(admissible);
        rows.push_back(row(inst, "higgs_small_involution", inv_w < 0 && admissible > 0, std::max(inv_w, 0LL), counts));
        rows.push_back(row(inst, "higgs_small_support", supp_w < 0, supp_w, counts));
        rows.push_back(row(inst, "higgs_small_weight", wt_w < 0, wt_w, counts + " max_rel_err=" + num(wt_err)));
    }
}

void higgs_small_bound_rows(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
    const GroupWithRep gr = builtin_group("symmetric", 3);
    const CellComplex cx(Box::cube(3, 1));
    const HomSpace space(cx, gr.group, spanning_tree(cx));
    const HiggsModel m(cx, gr.group, gr.rep, quotient_by_Ht(gr.group, gr.rep, 2), 3.0, 0.01);
    const CellSet edges = make_set({edge_at(cx, at(0, 0, 0), 0), edge_at(cx, at(0, 1, 1), 0)});
    const std::vector<ReducedConfig> family = reduced_family(m, all_homs(space, opt.cap), edges, 1, opt.cap);
    const SupportWeights w = higgs_small_weights(space, m, family);
    long long witness = -1, k = 0;
    double worst = 0;
    const SmallKappaBound probe = higgs_phi2_small_bound(m, 0, 0);
    for (const CellSet& P : subsets(all_plaquettes(cx)))
        for (const CellSet& P0 : subsets(P)) {
            const double v = phi2_from_weights(w, P0, P);
            const SmallKappaBound b = higgs_phi2_small_bound(m, static_cast<int>(P0.size()), static_cast<int>(P.size()));
            worst = std::max(worst, v / b.value);
            if (v > b.value && witness < 0) witness = k;
            ++k;
        }
    rows.push_back(row("cube1_s3_z2_beta3_kappa0.01", "higgs_small_phi2_bound", !probe.vacuous && witness < 0,
                       std::max(witness, 0LL),
                       "c=" + num(probe.constant) + " family=" + std::to_string(family.size()) +
                           " max_ratio=" + num(worst)));
}

}  // namespace

std::vector<CheckRow> check_higgs_small(const VerifyOptions& opt) {
    std::vector<CheckRow> rows;
    higgs_fiber_rows(opt, rows);
    higgs_knot_rows(opt, rows);
    higgs_small_bound_rows(opt, rows);
    return rows;
}

std::vector<std::string> suite_names() { return {"gauge", "swap", "peierls", "bounds", "higgs_large", "higgs_small"}; }

std::vector<CheckRow> run_suite(const std::string& name, const VerifyOptions& opt) {
    auto join = [](std::vector<CheckRow> a, const std::vector<CheckRow>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    if (name == "gauge")
        return join(join(check_fiber_counts(opt), check_pushforward(opt)), check_observable_transfer(opt));
    if (name == "swap") return check_swap(opt);
    if (name == "peierls") return check_peierls(opt);
    if (name == "bounds") return check_bound_formulas(opt);
    if (name == "higgs_large") return check_higgs_large(opt);
    if (name == "higgs_small") return check_higgs_small(opt);
    throw ConfigError("unknown suite: " + name);
}

bool all_pass(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

}  // namespace lgt
