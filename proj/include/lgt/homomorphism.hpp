#pragma once

#include <cstdint>
#include <vector>

#include "lgt/gibbs.hpp"
#include "lgt/group.hpp"
#include "lgt/lattice.hpp"

namespace lgt {

struct Letter {
    int generator;
    int exponent;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

using GeneratorWord = std::vector<Letter>;

GeneratorWord free_reduce(const GeneratorWord& w);
GeneratorWord inverse_word(const GeneratorWord& w);
GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b);

// Co-tree letters of an edge path, in traversal order; tree edges contribute nothing.
GeneratorWord path_letters(const SpanningTree& tree, const std::vector<Step>& steps);

// Word of a closed loop in the free generators a_e = w_x e w_y^-1.
GeneratorWord generator_word(const CellComplex& cx, const SpanningTree& tree, const Loop& loop);

// xi = l gamma l^-1 with l the tree path to the loop's start.
GeneratorWord xi_of_loop(const CellComplex& cx, const SpanningTree& tree, const Loop& loop);
// Same with an explicit base path from the root to the loop's start.
GeneratorWord xi_of_loop(const CellComplex& cx, const SpanningTree& tree, const Loop& loop,
                         const std::vector<Step>& base_path);

// Homomorphism from the free fundamental group, stored as images of the co-tree generators.
struct Homomorphism {
    std::vector<Element> images;
    auto operator<=>(const Homomorphism&) const = default;
};

// Cell complex, group and base tree bundled for evaluating homomorphisms.
class HomSpace {
public:
    HomSpace(const CellComplex& cx, const GroupTable& g, SpanningTree tree);

    const CellComplex& complex() const { return *cx_; }
    const GroupTable& group() const { return *g_; }
    const SpanningTree& tree() const { return tree_; }
    int generator_count() const { return tree_.generator_count(); }
    const GeneratorWord& plaquette_word(int p) const { return plaquette_words_[p]; }

    Homomorphism trivial() const { return {std::vector<Element>(generator_count(), 0)}; }
    Element evaluate(const Homomorphism& psi, const GeneratorWord& w) const;
    Element plaquette_image(const Homomorphism& psi, int p) const { return evaluate(psi, plaquette_words_[p]); }
    CellSet support(const Homomorphism& psi) const;

    Homomorphism psi_of_config(const EdgeConfig& sigma) const;
    EdgeConfig gauge_fix(const Homomorphism& psi) const;

    std::uint64_t omega_size(std::uint64_t cap = ~std::uint64_t{0}) const;
    Homomorphism decode(std::uint64_t index) const;
    std::uint64_t encode(const Homomorphism& psi) const;

private:
    const CellComplex* cx_;
    const GroupTable* g_;
    SpanningTree tree_;
    std::vector<GeneratorWord> plaquette_words_;
};

// {p : sigma_p != 1}
CellSet config_support(const CellComplex& cx, const GroupTable& g, const EdgeConfig& sigma);

double nu_weight(const HomSpace& space, const GibbsSpec& spec, const Homomorphism& psi);

struct NuDistribution {
    std::vector<double> prob;  // indexed by HomSpace::encode
    double partition = 0;
};

NuDistribution enumerate_nu(const HomSpace& space, const GibbsSpec& spec,
                            std::uint64_t cap = kDefaultEnumerationCap);

enum class SolverPath { Automatic, Search };

// Every psi with supp(psi) inside P, sorted by generator images.
std::vector<Homomorphism> solve_support_constraints(const HomSpace& space, const CellSet& allowed,
                                                    std::uint64_t cap = std::uint64_t{1} << 22,
                                                    SolverPath path = SolverPath::Automatic);

}  // namespace lgt
