#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lgt {

using Element = int;
using Complex = std::complex<double>;

// Finite group as a Cayley table. Element 0 is the identity.
class GroupTable {
public:
    GroupTable() = default;
    GroupTable(std::string name, int order, std::vector<Element> mult);

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    Element mul(Element a, Element b) const { return mult_[a * order_ + b]; }
    Element inv(Element a) const { return inv_[a]; }
    Element conj(Element g, Element h) const { return mul(inv(h), mul(g, h)); }
    bool is_abelian() const;

    // Throws if associativity, identity or inverses fail.
    void validate() const;

private:
    std::string name_;
    int order_ = 0;
    std::vector<Element> mult_;
    std::vector<Element> inv_;
};

std::vector<std::vector<Element>> conjugacy_classes(const GroupTable& g);

// class_index[g] = position of the class of g in conjugacy_classes(G)
std::vector<int> class_index(const GroupTable& g);

std::vector<Element> center(const GroupTable& g);

struct UnitaryRep {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> matrices;
    std::vector<Complex> character;

    Complex chi(Element g) const { return character[g]; }
};

UnitaryRep make_rep(std::vector<Eigen::MatrixXcd> matrices);

// Checks unitarity, homomorphism property and class invariance of the character.
void validate_rep(const GroupTable& g, const UnitaryRep& rep, double tol = 1e-12);

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);

struct GroupWithRep {
    GroupTable group;
    UnitaryRep rep;
};

// Families: "cyclic" n, "dihedral" n, "symmetric" 3, "quaternion" 8.
GroupWithRep builtin_group(const std::string& family, int param);

double delta_G(const GroupTable& g, const UnitaryRep& rep);
double phi_beta(const UnitaryRep& rep, double beta, Element g);
double beta_threshold(const GroupTable& g, const UnitaryRep& rep);

// gap[g] = Re(chi(1) - chi(g)); phi_beta(g) = exp(-beta * gap[g]).
std::vector<double> gap_table(const UnitaryRep& rep);

// Complex-valued function on the group, checked to be constant on classes.
class ClassFunction {
public:
    ClassFunction(const GroupTable& g, std::vector<Complex> values, double tol = 1e-12);
    Complex operator()(Element g) const { return values_[g]; }
    double sup_norm() const;
    const std::vector<Complex>& values() const { return values_; }

private:
    std::vector<Complex> values_;
};

ClassFunction character_function(const GroupTable& g, const UnitaryRep& rep);

}  // namespace lgt
