#include "lgt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "lgt/gibbs.hpp"

namespace lgt {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

Box parse_lattice(const json& j) {
    const int dim = get_or<int>(j, "dim", 3);
    if (dim < 2 || dim > kMaxDim) throw ConfigError("config: lattice dim must be 2..4");
    Box b;
    b.dim = dim;
    if (j.contains("side")) {
        const int side = get_or<int>(j, "side", 1);
        if (side < 1) throw ConfigError("config: lattice side must be positive");
        return Box::cube(dim, side);
    }
    const auto lo = get_or<std::vector<int>>(j, "lo", std::vector<int>(dim, 0));
    const auto hi = get_or<std::vector<int>>(j, "hi", std::vector<int>{});
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw ConfigError("config: lattice lo/hi must have dim entries");
    for (int i = 0; i < dim; ++i) {
        if (hi[i] <= lo[i]) throw ConfigError("config: lattice sides must be positive");
        b.lo[i] = lo[i];
        b.hi[i] = hi[i];
    }
    return b;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    ExperimentConfig c;
    if (j.contains("lattice")) c.lattice = parse_lattice(j.at("lattice"));
    if (j.contains("group")) {
        const json& g = j.at("group");
        c.group_family = get_or<std::string>(g, "family", c.group_family);
        c.group_param = get_or<int>(g, "param", c.group_param);
    }
    try {
        builtin_group(c.group_family, c.group_param);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (j.contains("beta")) c.betas = {get_or<double>(j, "beta", 0)};
    if (j.contains("betas")) c.betas = get_or<std::vector<double>>(j, "betas", {});
    if (c.betas.empty()) throw ConfigError("config: at least one beta required");
    for (double b : c.betas)
        if (!(b >= 0)) throw ConfigError("config: beta must be nonnegative");
    if (j.contains("kappa")) c.kappa = get_or<double>(j, "kappa", 0);
    c.higgs_h = get_or<int>(j, "higgs_h", c.higgs_h);

    if (j.contains("decay")) {
        const json& d = j.at("decay");
        DecaySettings& s = c.decay;
        s.L = get_or(d, "L", s.L);
        s.chains = get_or(d, "chains", s.chains);
        s.sweeps = get_or(d, "sweeps", s.sweeps);
        s.burn_in = get_or(d, "burn_in", s.burn_in);
        s.batches_per_chain = get_or(d, "batches_per_chain", s.batches_per_chain);
        s.axis = get_or(d, "axis", s.axis);
        const auto plane = get_or<std::vector<int>>(d, "plane", {s.mu, s.nu});
        if (plane.size() != 2) throw ConfigError("config: decay.plane needs two axes");
        s.mu = plane[0];
        s.nu = plane[1];
        const auto anchor = get_or<std::vector<int>>(d, "anchor", {s.anchor.begin(), s.anchor.begin() + c.lattice.dim});
        if (static_cast<int>(anchor.size()) != c.lattice.dim) throw ConfigError("config: decay.anchor needs dim entries");
        s.anchor = Coord{};
        std::copy(anchor.begin(), anchor.end(), s.anchor.begin());
        s.observable = get_or(d, "observable", s.observable);
    }
    const DecaySettings& s = c.decay;
    if (s.chains < 1 || s.sweeps < 1 || s.burn_in < 0 || s.batches_per_chain < 1)
        throw ConfigError("config: decay counts must be positive");
    if (s.sweeps % s.batches_per_chain != 0) throw ConfigError("config: sweeps must divide into batches_per_chain");
    if (s.chains * s.batches_per_chain < 10) throw ConfigError("config: need at least 10 batches in total");
    const int dim = c.lattice.dim;
    if (s.axis < 0 || s.axis >= dim || s.mu < 0 || s.nu >= dim || s.mu >= s.nu)
        throw ConfigError("config: decay axes out of range");
    if (s.observable != "wilson" && s.observable != "constant")
        throw ConfigError("config: decay.observable must be 'wilson' or 'constant'");
    for (int L : s.L)
        if (L < 0) throw ConfigError("config: decay.L must be nonnegative");

    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        BoundSettings& t = c.bounds;
        t.b1_size = get_or(b, "b1_size", t.b1_size);
        t.b2_size = get_or(b, "b2_size", t.b2_size);
        t.L = get_or(b, "L", t.L);
        t.f1_sup = get_or(b, "f1_sup", t.f1_sup);
        t.f2_sup = get_or(b, "f2_sup", t.f2_sup);
        if (t.b1_size < 0 || t.b2_size < 0 || t.f1_sup < 0 || t.f2_sup < 0)
            throw ConfigError("config: bounds entries must be nonnegative");
        for (int L : t.L)
            if (L < 1) throw ConfigError("config: bounds.L must be at least 1");
    }
    c.suites = get_or(j, "suites", c.suites);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.workers = get_or(j, "workers", c.workers);
    if (c.workers < 1) throw ConfigError("config: workers must be positive");
    if (j.contains("caps")) c.enumeration_cap = get_or<std::uint64_t>(j.at("caps"), "enumeration", c.enumeration_cap);
    c.out_dir = get_or(j, "out", c.out_dir);
    c.inject_fault = get_or(j, "inject_fault", c.inject_fault);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ExpFit fit_exponential(const std::vector<DecayRow>& rows) {
    ExpFit fit;
    std::vector<double> xs, ys;
    for (const DecayRow& r : rows) {
        if (r.cov == 0 || !std::isfinite(r.cov)) {
            fit.excluded.push_back(r.L);
            continue;
        }
        xs.push_back(r.L);
        ys.push_back(std::log(std::abs(r.cov)));
    }
    if (xs.size() < 3) {
        fit.reason = "fewer than 3 rows with nonzero covariance";
        return fit;
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0) {
        fit.reason = "all rows share one L";
        return fit;
    }
    fit.ok = true;
    fit.rate = sxy / sxx;
    fit.intercept = my - fit.rate * mx;
    fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

bool nonincreasing_within(const std::vector<DecayRow>& rows, double k) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double rise = std::abs(rows[i].cov) - std::abs(rows[i - 1].cov);
        const double se = std::hypot(rows[i].std_error, rows[i - 1].std_error);
        if (rise > k * se) return false;
    }
    return true;
}

std::vector<DecayRow> run_decay(const ExperimentConfig& cfg) {
    const DecaySettings& s = cfg.decay;
    const GroupWithRep gr = builtin_group(cfg.group_family, cfg.group_param);
    const CellComplex cx(cfg.lattice);
    const GibbsSpec spec(cx, gr.group, gr.rep, cfg.beta());

    auto plaquette_at = [&](int shift) {
        Coord x = s.anchor;
        x[s.axis] += shift;
        const int v = cx.vertex_index(x);
        const int p = v < 0 ? -1 : cx.plaquette_index(v, s.mu, s.nu);
        if (p < 0) throw ConfigError("config: decay plaquette at shift " + std::to_string(shift) + " leaves the lattice");
        return p;
    };
    const int p0 = plaquette_at(0);
    std::vector<int> targets;
    for (int L : s.L) targets.push_back(plaquette_at(L));

    const std::size_t per_chain = static_cast<std::size_t>(s.sweeps);
    const std::size_t total = per_chain * s.chains;
    std::vector<double> x(total);
    std::vector<std::vector<double>> y(targets.size(), std::vector<double>(total));
    const bool constant = s.observable == "constant";

    auto run_chain = [&](int c) {
        std::size_t at = per_chain * c;
        mcmc_chain(spec, s.sweeps, cfg.seed, static_cast<std::uint64_t>(c), s.burn_in, [&](const EdgeConfig& sigma) {
            x[at] = std::real(gr.rep.chi(plaquette_value(cx, gr.group, sigma, p0)));
            for (std::size_t k = 0; k < targets.size(); ++k)
                y[k][at] = constant ? 1.0 : std::real(gr.rep.chi(plaquette_value(cx, gr.group, sigma, targets[k])));
            ++at;
        });
    };
    const int workers = std::min(cfg.workers, s.chains);
    if (workers <= 1) {
        for (int c = 0; c < s.chains; ++c) run_chain(c);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int c = w; c < s.chains; c += workers) run_chain(c);
            });
        for (std::thread& t : pool) t.join();
    }

    std::vector<DecayRow> rows;
    const std::size_t batch = per_chain / s.batches_per_chain;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const CovEstimate e = estimate_cov(x, y[k], batch);
        rows.push_back({s.L[k], e.estimate, e.std_error, e.samples, cfg.beta()});
    }
    return rows;
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

std::string decay_csv(const std::vector<DecayRow>& rows) {
    std::string out = "L,cov,stderr,n,beta\n";
    for (const DecayRow& r : rows)
        out += std::to_string(r.L) + "," + fmt("%.17g", r.cov) + "," + fmt("%.17g", r.std_error) + "," +
               std::to_string(r.n) + "," + fmt("%.17g", r.beta) + "\n";
    return out;
}

std::string decay_svg(const std::vector<DecayRow>& rows, double reference_slope) {
    const double W = 480, H = 320, left = 60, right = 20, top = 20, bottom = 40;
    std::vector<std::pair<double, double>> pts;  // (L, log10 |cov|)
    for (const DecayRow& r : rows)
        if (r.cov != 0 && std::isfinite(r.cov)) pts.emplace_back(r.L, std::log10(std::abs(r.cov)));

    double x0 = 0, x1 = 1, y0 = -1, y1 = 0;
    if (!pts.empty()) {
        x0 = x1 = pts.front().first;
        y0 = y1 = pts.front().second;
        for (auto [a, b] : pts) {
            x0 = std::min(x0, a);
            x1 = std::max(x1, a);
            y0 = std::min(y0, b);
            y1 = std::max(y1, b);
        }
        if (x1 == x0) x1 = x0 + 1;
        y0 = std::floor(y0);
        y1 = std::ceil(y1);
        if (y1 == y0) y1 = y0 + 1;
    }
    auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (W - left - right); };
    auto py = [&](double v) { return top + (y1 - v) / (y1 - y0) * (H - top - bottom); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"320\" viewBox=\"0 0 480 320\">\n";
    s += "<rect width=\"480\" height=\"320\" fill=\"white\"/>\n";
    s += "<path d=\"M" + fmt("%.2f", left) + " " + fmt("%.2f", top) + " V" + fmt("%.2f", H - bottom) + " H" +
         fmt("%.2f", W - right) + "\" stroke=\"black\" fill=\"none\"/>\n";
    s += "<text x=\"240\" y=\"312\" font-size=\"12\" text-anchor=\"middle\">L</text>\n";
    s += "<text x=\"14\" y=\"160\" font-size=\"12\" transform=\"rotate(-90 14 160)\" text-anchor=\"middle\">log10 |cov|</text>\n";
    for (double t = y0; t <= y1 + 1e-9; t += 1)
        s += "<text x=\"" + fmt("%.2f", left - 6) + "\" y=\"" + fmt("%.2f", py(t) + 4) +
             "\" font-size=\"10\" text-anchor=\"end\">" + fmt("%.0f", t) + "</text>\n";
    if (!pts.empty()) {
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i)
            d += (i ? " L" : "M") + fmt("%.2f", px(pts[i].first)) + " " + fmt("%.2f", py(pts[i].second));
        s += "<path d=\"" + d + "\" stroke=\"steelblue\" fill=\"none\"/>\n";
        for (auto [a, b] : pts)
            s += "<circle cx=\"" + fmt("%.2f", px(a)) + "\" cy=\"" + fmt("%.2f", py(b)) + "\" r=\"3\" fill=\"steelblue\"/>\n";
        // reference slope through the first point, clipped to the plot range
        const double k = reference_slope / std::log(10.0);
        const double ya = pts.front().second;
        const double yb = ya + k * (x1 - pts.front().first);
        const double xb = yb < y0 ? pts.front().first + (y0 - ya) / k : x1;
        s += "<path d=\"M" + fmt("%.2f", px(pts.front().first)) + " " + fmt("%.2f", py(ya)) + " L" + fmt("%.2f", px(xb)) +
             " " + fmt("%.2f", py(std::max(yb, y0))) + "\" stroke=\"crimson\" stroke-dasharray=\"4 3\" fill=\"none\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string checks_csv(const std::vector<CheckRow>& rows) {
    std::string out = "instance,check,status,witness,value\n";
    for (const CheckRow& r : rows)
        out += r.instance + "," + r.check + "," + (r.pass ? "pass" : "fail") + "," + std::to_string(r.witness) + "," +
               r.value + "\n";
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit_decay(const std::vector<DecayRow>& rows, const std::filesystem::path& dir, double reference_slope) {
    write_text(dir / "decay.csv", decay_csv(rows));
    write_text(dir / "decay.svg", decay_svg(rows, reference_slope));
}

void emit_checks(const std::vector<CheckRow>& checks, const std::filesystem::path& dir) {
    write_text(dir / "checks.csv", checks_csv(checks));
}

void emit_report(const std::vector<DecayRow>& rows, const std::vector<CheckRow>& checks,
                 const std::filesystem::path& dir, double reference_slope) {
    emit_decay(rows, dir, reference_slope);
    emit_checks(checks, dir);
}

}  // namespace lgt
