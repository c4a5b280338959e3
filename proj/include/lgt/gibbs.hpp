#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lgt/group.hpp"
#include "lgt/lattice.hpp"
#include "lgt/rng.hpp"

namespace lgt {

using EdgeConfig = std::vector<Element>;

struct Loop {
    std::vector<Step> steps;
    int start(const CellComplex& cx) const { return steps.empty() ? -1 : cx.source(steps.front()); }
    int length() const { return static_cast<int>(steps.size()); }
};

Loop plaquette_loop(const CellComplex& cx, int p);

inline Element step_value(const GroupTable& g, const EdgeConfig& sigma, Step s) {
    return s.forward ? sigma[s.edge] : g.inv(sigma[s.edge]);
}

Element plaquette_value(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, int p);
Element holonomy(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Loop& loop);
Complex wilson(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma, const Loop& loop,
               const ClassFunction& chi0);

// sigma_e -> h_x sigma_e h_y^-1 for e = (x, y)
EdgeConfig gauge_transform(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma,
                           const std::vector<Element>& h);

class GibbsSpec {
public:
    GibbsSpec(const CellComplex& cx, const GroupTable& g, const UnitaryRep& rep, double beta);

    const CellComplex& complex() const { return *cx_; }
    const GroupTable& group() const { return *g_; }
    const UnitaryRep& rep() const { return *rep_; }
    double beta() const { return beta_; }
    double delta() const { return delta_; }
    double gap(Element g) const { return gap_[g]; }
    double phi(Element g) const { return phi_[g]; }

private:
    const CellComplex* cx_;
    const GroupTable* g_;
    const UnitaryRep* rep_;
    double beta_;
    double delta_ = 0;
    std::vector<double> gap_;
    std::vector<double> phi_;
};

double action(const GibbsSpec& spec, const EdgeConfig& sigma);
double weight(const GibbsSpec& spec, const EdgeConfig& sigma);

// Mixed-radix indexing of configurations, edge 0 least significant.
EdgeConfig decode_config(std::uint64_t index, int edges, int order);
std::uint64_t encode_config(const EdgeConfig& sigma, int order);
std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t cap);

struct ExactDistribution {
    std::vector<double> prob;  // indexed by encode_config
    double partition = 0;
    int edges = 0;
    int order = 0;
    EdgeConfig config(std::uint64_t index) const { return decode_config(index, edges, order); }
};

constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

ExactDistribution enumerate_mu(const GibbsSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

// Single-edge heat-bath sampler sweeping edges in index order.
class HeatBath {
public:
    HeatBath(const GibbsSpec& spec, std::uint64_t seed, std::uint64_t stream = 0);

    void sweep();
    void update_edge(int e);
    const EdgeConfig& config() const { return sigma_; }
    void set_config(EdgeConfig sigma);

    // Conditional law of sigma_e given every other edge.
    std::vector<double> conditional(const EdgeConfig& sigma, int e) const;

private:
    void fill_conditional(const EdgeConfig& sigma, int e, double* out) const;

    struct Incidence {
        int plaquette;
        int position;
    };
    const GibbsSpec* spec_;
    CounterRng rng_;
    EdgeConfig sigma_;
    std::vector<std::vector<Incidence>> incidence_;
    std::vector<double> scratch_;
};

// Runs `sweeps` heat-bath sweeps after `burn_in`, invoking `visit` after each recorded sweep.
void mcmc_chain(const GibbsSpec& spec, int sweeps, std::uint64_t seed, std::uint64_t stream, int burn_in,
                const std::function<void(const EdgeConfig&)>& visit);

struct CovEstimate {
    double estimate = 0;
    double std_error = 0;
    std::size_t samples = 0;
    int batches = 0;
};

// Batch-means covariance of paired samples with a jackknife standard error over batches.
// Optional weights turn an exhaustive enumeration into an exact expectation.
CovEstimate estimate_cov(std::span<const double> x, std::span<const double> y, std::size_t batch_size,
                         std::span<const double> weights = {});

// Binary sample stream. Layout (little endian):
//   magic "LGTSMP01", u32 dim, i32 lo[4], i32 hi[4], u32 name length, name bytes,
//   f64 beta, u64 seed, u32 edge count, then per sample u16 per edge.
struct StreamHeader {
    Box box;
    std::string group_name;
    double beta = 0;
    std::uint64_t seed = 0;
    std::uint32_t edges = 0;
    bool operator==(const StreamHeader&) const = default;
};

void write_stream_header(std::ostream& os, const StreamHeader& h);
void write_stream_sample(std::ostream& os, const EdgeConfig& sigma);
StreamHeader read_stream_header(std::istream& is);
bool read_stream_sample(std::istream& is, std::uint32_t edges, EdgeConfig& sigma);

}  // namespace lgt
