#include "lgt/homomorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace lgt {

GeneratorWord free_reduce(const GeneratorWord& w) {
    GeneratorWord out;
    for (const Letter& l : w) {
        if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

GeneratorWord inverse_word(const GeneratorWord& w) {
    GeneratorWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, -it->exponent});
    return out;
}

GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b) {
    GeneratorWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(out);
}

GeneratorWord path_letters(const SpanningTree& tree, const std::vector<Step>& steps) {
    GeneratorWord w;
    for (const Step& s : steps) {
        const int gen = tree.generator_of_edge[s.edge];
        if (gen >= 0) w.push_back({gen, s.forward ? 1 : -1});
    }
    return free_reduce(w);
}

GeneratorWord generator_word(const CellComplex& cx, const SpanningTree& tree, const Loop& loop) {
    cx.check_loop(loop.steps);
    return path_letters(tree, loop.steps);
}

GeneratorWord xi_of_loop(const CellComplex& cx, const SpanningTree& tree, const Loop& loop) {
    return generator_word(cx, tree, loop);
}

GeneratorWord xi_of_loop(const CellComplex& cx, const SpanningTree& tree, const Loop& loop,
                         const std::vector<Step>& base_path) {
    const int start = loop.start(cx);
    int at = tree.root;
    for (const Step& s : base_path) {
        if (cx.source(s) != at) throw std::invalid_argument("base path does not chain");
        at = cx.target(s);
    }
    if (start >= 0 && at != start) throw std::invalid_argument("base path does not end at the loop start");
    const GeneratorWord l = path_letters(tree, base_path);
    return concat(concat(l, generator_word(cx, tree, loop)), inverse_word(l));
}

HomSpace::HomSpace(const CellComplex& cx, const GroupTable& g, SpanningTree tree)
    : cx_(&cx), g_(&g), tree_(std::move(tree)) {
    for (int p = 0; p < cx.plaquette_count(); ++p) plaquette_words_.push_back(xi_of_loop(cx, tree_, plaquette_loop(cx, p)));
}

Element HomSpace::evaluate(const Homomorphism& psi, const GeneratorWord& w) const {
    Element v = 0;
    for (const Letter& l : w) {
        const Element x = psi.images[l.generator];
        v = g_->mul(v, l.exponent > 0 ? x : g_->inv(x));
    }
    return v;
}

CellSet HomSpace::support(const Homomorphism& psi) const {
    CellSet s;
    for (int p = 0; p < cx_->plaquette_count(); ++p)
        if (plaquette_image(psi, p) != 0) s.push_back(p);
    return s;
}

Homomorphism HomSpace::psi_of_config(const EdgeConfig& sigma) const {
    // holonomy along the tree path to each vertex
    std::vector<Element> along(cx_->vertex_count(), 0);
    for (int v : tree_.order) {
        if (v == tree_.root) continue;
        const Step s = tree_.parent_step[v];
        along[v] = g_->mul(along[cx_->source(s)], step_value(*g_, sigma, s));
    }
    Homomorphism psi;
    psi.images.reserve(generator_count());
    for (int e : tree_.cotree_edges) {
        const Edge& ed = cx_->edge(e);
        psi.images.push_back(g_->mul(along[ed.tail], g_->mul(sigma[e], g_->inv(along[ed.head]))));
    }
    return psi;
}

EdgeConfig HomSpace::gauge_fix(const Homomorphism& psi) const {
    EdgeConfig sigma(cx_->edge_count(), 0);
    for (int k = 0; k < generator_count(); ++k) sigma[tree_.cotree_edges[k]] = psi.images[k];
    return sigma;
}

std::uint64_t HomSpace::omega_size(std::uint64_t cap) const {
    return checked_power(g_->order(), generator_count(), cap);
}

Homomorphism HomSpace::decode(std::uint64_t index) const { return {decode_config(index, generator_count(), g_->order())}; }

std::uint64_t HomSpace::encode(const Homomorphism& psi) const { return encode_config(psi.images, g_->order()); }

CellSet config_support(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma) {
    CellSet s;
    for (int p = 0; p < cx.plaquette_count(); ++p)
        if (plaquette_value(cx, g, sigma, p) != 0) s.push_back(p);
    return s;
}

double nu_weight(const HomSpace& space, const GibbsSpec& spec, const Homomorphism& psi) {
    double w = 1;
    for (int p = 0; p < space.complex().plaquette_count(); ++p) w *= spec.phi(space.plaquette_image(psi, p));
    return w;
}

NuDistribution enumerate_nu(const HomSpace& space, const GibbsSpec& spec, std::uint64_t cap) {
    const std::uint64_t n = space.omega_size(cap);
    NuDistribution d;
    d.prob.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) d.prob[i] = nu_weight(space, spec, space.decode(i));
    for (double w : d.prob) d.partition += w;
    for (double& w : d.prob) w /= d.partition;
    return d;
}

namespace {

struct Constraint {
    GeneratorWord word;
};

std::vector<Constraint> active_constraints(const HomSpace& space, const CellSet& allowed) {
    std::vector<Constraint> cs;
    for (int p = 0; p < space.complex().plaquette_count(); ++p)
        if (!set_contains(allowed, p) && !space.plaquette_word(p).empty()) cs.push_back({space.plaquette_word(p)});
    return cs;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int power_mod(long long b, int e, int m) {
    long long r = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<int>(r);
}

// Groups of prime order are cyclic: linear algebra over exponents of a generator.
std::vector<Homomorphism> solve_linear(const HomSpace& space, const std::vector<Constraint>& cs, std::uint64_t cap) {
    const GroupTable& g = space.group();
    const int q = g.order();
    std::vector<Element> pow(q);
    std::vector<int> log(q);
    pow[0] = 0;
    for (int k = 1; k < q; ++k) pow[k] = g.mul(pow[k - 1], 1);
    for (int k = 0; k < q; ++k) log[pow[k]] = k;

    const int n = space.generator_count();
    std::vector<std::vector<int>> rows;
    for (const Constraint& c : cs) {
        std::vector<int> row(n, 0);
        for (const Letter& l : c.word) row[l.generator] = ((row[l.generator] + l.exponent) % q + q) % q;
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        const int inv = power_mod(rows[r][col], q - 2, q);
        for (int& v : rows[r]) v = static_cast<int>(static_cast<long long>(v) * inv % q);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const int f = rows[i][col];
            for (int j = 0; j < n; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % q + q) % q;
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::uint64_t count = checked_power(q, static_cast<int>(free_cols.size()), cap);

    std::vector<Homomorphism> out;
    out.reserve(count);
    std::vector<int> x(n, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (int c : free_cols) {
            x[c] = static_cast<int>(t % q);
            t /= q;
        }
        for (int i = 0; i < r; ++i) {
            int s = 0;
            for (int c : free_cols) s = (s + rows[i][c] * x[c]) % q;
            x[pivot_col[i]] = (q - s) % q;
        }
        Homomorphism psi;
        for (int c = 0; c < n; ++c) psi.images.push_back(pow[x[c]]);
        out.push_back(std::move(psi));
    }
    return out;
}

class Search {
public:
    Search(const HomSpace& space, std::vector<Constraint> cs, std::uint64_t cap)
        : g_(space.group()), cs_(std::move(cs)), cap_(cap), value_(space.generator_count(), -1),
          watch_(space.generator_count()) {
        for (int c = 0; c < static_cast<int>(cs_.size()); ++c)
            for (const Letter& l : cs_[c].word) watch_[l.generator].push_back(c);
        for (auto& w : watch_) w.erase(std::unique(w.begin(), w.end()), w.end());
    }

    std::vector<Homomorphism> run() {
        std::vector<int> all(cs_.size());
        for (int c = 0; c < static_cast<int>(cs_.size()); ++c) all[c] = c;
        std::vector<int> trail;
        if (propagate(all, trail)) descend(0);
        return std::move(out_);
    }

private:
    // Returns false on a violated constraint; forced assignments are appended to trail.
    bool propagate(std::vector<int> queue, std::vector<int>& trail) {
        while (!queue.empty()) {
            const int c = queue.back();
            queue.pop_back();
            const GeneratorWord& w = cs_[c].word;
            int open = -1, open_count = 0;
            bool many = false;
            for (const Letter& l : w)
                if (value_[l.generator] < 0) {
                    if (open < 0) open = l.generator;
                    else if (open != l.generator) many = true;
                    ++open_count;
                }
            if (many) continue;
            if (open < 0) {
                if (eval(w) != 0) return false;
                continue;
            }
            if (open_count != 1) continue;
            // word = A x^e B with everything but x known: x^e = A^-1 B^-1
            Element a = 0, b = 0;
            int exponent = 0;
            bool before = true;
            for (const Letter& l : w) {
                if (l.generator == open) {
                    exponent = l.exponent;
                    before = false;
                    continue;
                }
                const Element v = l.exponent > 0 ? value_[l.generator] : g_.inv(value_[l.generator]);
                if (before) a = g_.mul(a, v);
                else b = g_.mul(b, v);
            }
            Element xe = g_.mul(g_.inv(a), g_.inv(b));
            value_[open] = exponent > 0 ? xe : g_.inv(xe);
            trail.push_back(open);
            for (int c2 : watch_[open]) queue.push_back(c2);
        }
        return true;
    }

    Element eval(const GeneratorWord& w) const {
        Element v = 0;
        for (const Letter& l : w) v = g_.mul(v, l.exponent > 0 ? value_[l.generator] : g_.inv(value_[l.generator]));
        return v;
    }

    void descend(int from) {
        int var = from;
        while (var < static_cast<int>(value_.size()) && value_[var] >= 0) ++var;
        if (var == static_cast<int>(value_.size())) {
            if (out_.size() >= cap_) throw std::length_error("support constraint solutions exceed cap");
            out_.push_back({value_});
            return;
        }
        for (Element x = 0; x < g_.order(); ++x) {
            std::vector<int> trail{var};
            value_[var] = x;
            if (propagate(watch_[var], trail)) descend(var + 1);
            for (int v : trail) value_[v] = -1;
        }
    }

    const GroupTable& g_;
    std::vector<Constraint> cs_;
    std::uint64_t cap_;
    std::vector<Element> value_;
    std::vector<std::vector<int>> watch_;
    std::vector<Homomorphism> out_;
};

}  // namespace

std::vector<Homomorphism> solve_support_constraints(const HomSpace& space, const CellSet& allowed, std::uint64_t cap,
                                                    SolverPath path) {
    auto cs = active_constraints(space, allowed);
    std::vector<Homomorphism> out;
    if (path == SolverPath::Automatic && is_prime(space.group().order()))
        out = solve_linear(space, cs, cap);
    else
        out = Search(space, std::move(cs), cap).run();
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lgt
