#include "lgt/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lgt {

Loop plaquette_loop(const CellComplex& cx, int p) {
    const auto& l = cx.plaquette(p).loop;
    return Loop{{l.begin(), l.end()}};
}

Element plaquette_value(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, int p) {
    Element v = 0;
    for (const Step& s : cx.plaquette(p).loop) v = g.mul(v, step_value(g, sigma, s));
    return v;
}

Element holonomy(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Loop& loop) {
    cx.check_loop(loop.steps);
    Element v = 0;
    for (const Step& s : loop.steps) v = g.mul(v, step_value(g, sigma, s));
    return v;
}

Complex wilson(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Loop& loop,
               const ClassFunction& chi0) {
    return chi0(holonomy(cx, g, sigma, loop));
}

EdgeConfig gauge_transform(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma,
                           const std::vector<Element>& h) {
    EdgeConfig out(sigma.size());
    for (int e = 0; e < cx.edge_count(); ++e)
        out[e] = g.mul(h[cx.edge(e).tail], g.mul(sigma[e], g.inv(h[cx.edge(e).head])));
    return out;
}

GibbsSpec::GibbsSpec(const CellComplex& cx, const GroupTable& g, const UnitaryRep& rep, double beta)
    : cx_(&cx), g_(&g), rep_(&rep), beta_(beta), gap_(gap_table(rep)) {
    if (!(beta >= 0)) throw std::invalid_argument("gibbs: beta must be nonnegative");
    if (static_cast<int>(rep.character.size()) != g.order())
        throw std::invalid_argument("gibbs: representation does not match the group");
    delta_ = delta_G(g, rep);
    for (double x : gap_) phi_.push_back(std::exp(-beta * x));
}

double action(const GibbsSpec& spec, const EdgeConfig& sigma) {
    double s = 0;
    for (int p = 0; p < spec.complex().plaquette_count(); ++p)
        s += spec.gap(plaquette_value(spec.complex(), spec.group(), sigma, p));
    return s;
}

double weight(const GibbsSpec& spec, const EdgeConfig& sigma) {
    double w = 1;
    for (int p = 0; p < spec.complex().plaquette_count(); ++p)
        w *= spec.phi(plaquette_value(spec.complex(), spec.group(), sigma, p));
    return w;
}

EdgeConfig decode_config(std::uint64_t index, int edges, int order) {
    EdgeConfig sigma(edges);
    for (int e = 0; e < edges; ++e) {
        sigma[e] = static_cast<Element>(index % order);
        index /= order;
    }
    return sigma;
}

std::uint64_t encode_config(const EdgeConfig& sigma, int order) {
    std::uint64_t index = 0;
    for (std::size_t e = sigma.size(); e-- > 0;) index = index * order + sigma[e];
    return index;
}

std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t cap) {
    std::uint64_t n = 1;
    for (int i = 0; i < exponent; ++i) {
        if (n > cap / base) throw std::length_error("enumeration cap exceeded");
        n *= base;
    }
    if (n > cap) throw std::length_error("enumeration cap exceeded");
    return n;
}

ExactDistribution enumerate_mu(const GibbsSpec& spec, std::uint64_t cap) {
    const CellComplex& cx = spec.complex();
    const GroupTable& g = spec.group();
    const int q = g.order();
    const std::uint64_t total = checked_power(q, cx.edge_count(), cap);
    ExactDistribution dist;
    dist.edges = cx.edge_count();
    dist.order = q;
    dist.prob.resize(total);

    // odometer over configurations; plaquette values are tracked as per-element counts so the
    // action never accumulates rounding drift
    EdgeConfig sigma(cx.edge_count(), 0);
    std::vector<Element> value(cx.plaquette_count(), 0);
    std::vector<long> count(q, 0);
    count[0] = cx.plaquette_count();
    for (std::uint64_t i = 0; i < total; ++i) {
        double s = 0;
        for (int h = 1; h < q; ++h) s += static_cast<double>(count[h]) * spec.gap(h);
        dist.prob[i] = std::exp(-spec.beta() * s);
        for (int e = 0; e < cx.edge_count(); ++e) {
            sigma[e] = (sigma[e] + 1) % q;
            for (int p : cx.plaquettes_of_edge(e)) {
                const Element v = plaquette_value(cx, g, sigma, p);
                --count[value[p]];
                ++count[v];
                value[p] = v;
            }
            if (sigma[e] != 0) break;
        }
    }
    long double z = 0;
    for (double w : dist.prob) z += w;
    dist.partition = static_cast<double>(z);
    for (double& w : dist.prob) w = static_cast<double>(w / z);
    return dist;
}

HeatBath::HeatBath(const GibbsSpec& spec, std::uint64_t seed, std::uint64_t stream)
    : spec_(&spec), rng_(seed, stream), sigma_(spec.complex().edge_count(), 0) {
    const CellComplex& cx = spec.complex();
    incidence_.resize(cx.edge_count());
    for (int p = 0; p < cx.plaquette_count(); ++p)
        for (int i = 0; i < 4; ++i) incidence_[cx.plaquette(p).loop[i].edge].push_back({p, i});
    scratch_.resize(spec.group().order());
}

void HeatBath::set_config(EdgeConfig sigma) {
    if (sigma.size() != sigma_.size()) throw std::invalid_argument("heat bath: config size mismatch");
    sigma_ = std::move(sigma);
}

std::vector<double> HeatBath::conditional(const EdgeConfig& sigma, int e) const {
    std::vector<double> p(spec_->group().order());
    fill_conditional(sigma, e, p.data());
    return p;
}

void HeatBath::fill_conditional(const EdgeConfig& sigma, int e, double* logw) const {
    const CellComplex& cx = spec_->complex();
    const GroupTable& g = spec_->group();
    const int q = g.order();
    std::fill(logw, logw + q, 0.0);
    for (const Incidence& inc : incidence_[e]) {
        const auto& loop = cx.plaquette(inc.plaquette).loop;
        // rotate the loop to start at e: value is conjugate to s(e) * staple
        Element staple = 0;
        for (int k = 1; k < 4; ++k) staple = g.mul(staple, step_value(g, sigma, loop[(inc.position + k) % 4]));
        const bool fwd = loop[inc.position].forward;
        for (Element x = 0; x < q; ++x) logw[x] -= spec_->beta() * spec_->gap(g.mul(fwd ? x : g.inv(x), staple));
    }
    double m = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < q; ++x) m = std::max(m, logw[x]);
    double z = 0;
    for (int x = 0; x < q; ++x) z += (logw[x] = std::exp(logw[x] - m));
    for (int x = 0; x < q; ++x) logw[x] /= z;
}

void HeatBath::update_edge(int e) {
    std::vector<double>& p = scratch_;
    fill_conditional(sigma_, e, p.data());
    double u = rng_.uniform();
    Element pick = static_cast<Element>(p.size()) - 1;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (u < p[x]) {
            pick = static_cast<Element>(x);
            break;
        }
        u -= p[x];
    }
    sigma_[e] = pick;
}

void HeatBath::sweep() {
    for (int e = 0; e < static_cast<int>(sigma_.size()); ++e) update_edge(e);
}

void mcmc_chain(const GibbsSpec& spec, int sweeps, std::uint64_t seed, std::uint64_t stream, int burn_in,
                const std::function<void(const EdgeConfig&)>& visit) {
    if (sweeps < 1) throw std::invalid_argument("mcmc: at least one sweep required");
    HeatBath chain(spec, seed, stream);
    for (int i = 0; i < burn_in; ++i) chain.sweep();
    for (int i = 0; i < sweeps; ++i) {
        chain.sweep();
        visit(chain.config());
    }
}

CovEstimate estimate_cov(std::span<const double> x, std::span<const double> y, std::size_t batch_size,
                         std::span<const double> weights) {
    if (x.size() != y.size() || (!weights.empty() && weights.size() != x.size()))
        throw std::invalid_argument("estimate_cov: length mismatch");
    if (batch_size == 0) throw std::invalid_argument("estimate_cov: zero batch size");
    const std::size_t nb = x.size() / batch_size;
    if (nb < 10) throw std::invalid_argument("estimate_cov: fewer than 10 batches");

    // centre on the global weighted means first; leave-one-batch-out estimates reuse the sums
    double W = 0, mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        W += w;
        mx += w * x[i];
        my += w * y[i];
    }
    mx /= W;
    my /= W;

    struct Sums {
        double w = 0, x = 0, y = 0, xy = 0;
    };
    std::vector<Sums> batch(nb);
    Sums tot;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::size_t b = std::min(i / batch_size, nb - 1);
        const double w = weights.empty() ? 1.0 : weights[i];
        const double dx = x[i] - mx, dy = y[i] - my;
        batch[b].w += w;
        batch[b].x += w * dx;
        batch[b].y += w * dy;
        batch[b].xy += w * dx * dy;
    }
    for (const Sums& s : batch) {
        tot.w += s.w;
        tot.x += s.x;
        tot.y += s.y;
        tot.xy += s.xy;
    }
    auto cov = [](const Sums& s) { return s.xy / s.w - (s.x / s.w) * (s.y / s.w); };
    CovEstimate out;
    out.estimate = tot.xy / tot.w;
    out.samples = x.size();
    out.batches = static_cast<int>(nb);
    std::vector<double> jack(nb);
    double mean = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        Sums s{tot.w - batch[b].w, tot.x - batch[b].x, tot.y - batch[b].y, tot.xy - batch[b].xy};
        jack[b] = s.w > 0 ? cov(s) : out.estimate;
        mean += jack[b];
    }
    mean /= static_cast<double>(nb);
    double ss = 0;
    for (double j : jack) ss += (j - mean) * (j - mean);
    out.std_error = std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
    return out;
}

namespace {

template <class T>
void put(std::ostream& os, T v) {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) os.put(static_cast<char>((u >> (8 * i)) & 0xff));
}

template <class T>
T get(std::istream& is) {
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = is.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("sample stream: truncated");
        u |= static_cast<U>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return static_cast<T>(u);
}

constexpr char kMagic[8] = {'L', 'G', 'T', 'S', 'M', 'P', '0', '1'};

}  // namespace

void write_stream_header(std::ostream& os, const StreamHeader& h) {
    os.write(kMagic, 8);
    put<std::uint32_t>(os, h.box.dim);
    for (int i = 0; i < kMaxDim; ++i) put<std::int32_t>(os, h.box.lo[i]);
    for (int i = 0; i < kMaxDim; ++i) put<std::int32_t>(os, h.box.hi[i]);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(h.group_name.size()));
    os.write(h.group_name.data(), static_cast<std::streamsize>(h.group_name.size()));
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(h.beta));
    std::memcpy(&bits, &h.beta, sizeof(bits));
    put<std::uint64_t>(os, bits);
    put<std::uint64_t>(os, h.seed);
    put<std::uint32_t>(os, h.edges);
}

void write_stream_sample(std::ostream& os, const EdgeConfig& sigma) {
    for (Element v : sigma) put<std::uint16_t>(os, static_cast<std::uint16_t>(v));
}

StreamHeader read_stream_header(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("sample stream: bad magic");
    StreamHeader h;
    h.box.dim = static_cast<int>(get<std::uint32_t>(is));
    for (int i = 0; i < kMaxDim; ++i) h.box.lo[i] = get<std::int32_t>(is);
    for (int i = 0; i < kMaxDim; ++i) h.box.hi[i] = get<std::int32_t>(is);
    const auto len = get<std::uint32_t>(is);
    h.group_name.resize(len);
    if (!is.read(h.group_name.data(), len)) throw std::runtime_error("sample stream: truncated");
    const auto bits = get<std::uint64_t>(is);
    std::memcpy(&h.beta, &bits, sizeof(bits));
    h.seed = get<std::uint64_t>(is);
    h.edges = get<std::uint32_t>(is);
    return h;
}

bool read_stream_sample(std::istream& is, std::uint32_t edges, EdgeConfig& sigma) {
    if (is.peek() == std::char_traits<char>::eof()) return false;
    sigma.resize(edges);
    for (std::uint32_t e = 0; e < edges; ++e) sigma[e] = get<std::uint16_t>(is);
    return true;
}

}  // namespace lgt
