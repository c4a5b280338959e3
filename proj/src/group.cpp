#include "lgt/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgt {

GroupTable::GroupTable(std::string name, int order, std::vector<Element> mult)
    : name_(std::move(name)), order_(order), mult_(std::move(mult)) {
    if (order_ <= 0 || mult_.size() != static_cast<std::size_t>(order_) * order_)
        throw std::invalid_argument("group table: size mismatch");
    inv_.assign(order_, -1);
    for (Element a = 0; a < order_; ++a)
        for (Element b = 0; b < order_; ++b)
            if (mul(a, b) == 0) inv_[a] = b;
    for (Element a = 0; a < order_; ++a)
        if (inv_[a] < 0) throw std::invalid_argument("group table: element without inverse");
}

bool GroupTable::is_abelian() const {
    for (Element a = 0; a < order_; ++a)
        for (Element b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

void GroupTable::validate() const {
    for (Element a = 0; a < order_; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) throw std::logic_error("group: identity is not neutral");
        if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) throw std::logic_error("group: bad inverse");
        for (Element b = 0; b < order_; ++b)
            for (Element c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::logic_error("group: associativity fails");
    }
}

std::vector<std::vector<Element>> conjugacy_classes(const GroupTable& g) {
    std::vector<int> seen(g.order(), 0);
    std::vector<std::vector<Element>> classes;
    for (Element a = 0; a < g.order(); ++a) {
        if (seen[a]) continue;
        std::vector<Element> cls;
        for (Element h = 0; h < g.order(); ++h) {
            Element c = g.conj(a, h);
            if (!seen[c]) {
                seen[c] = 1;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<int> class_index(const GroupTable& g) {
    std::vector<int> idx(g.order(), -1);
    auto classes = conjugacy_classes(g);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (Element a : classes[c]) idx[a] = static_cast<int>(c);
    return idx;
}

std::vector<Element> center(const GroupTable& g) {
    std::vector<Element> z;
    for (Element a = 0; a < g.order(); ++a) {
        bool central = true;
        for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
        if (central) z.push_back(a);
    }
    return z;
}

UnitaryRep make_rep(std::vector<Eigen::MatrixXcd> matrices) {
    if (matrices.empty()) throw std::invalid_argument("representation: no matrices");
    UnitaryRep rep;
    rep.dim = static_cast<int>(matrices.front().rows());
    for (const auto& m : matrices) {
        if (m.rows() != rep.dim || m.cols() != rep.dim)
            throw std::invalid_argument("representation: inconsistent matrix size");
        rep.character.push_back(m.trace());
    }
    rep.matrices = std::move(matrices);
    return rep;
}

void validate_rep(const GroupTable& g, const UnitaryRep& rep, double tol) {
    if (static_cast<int>(rep.matrices.size()) != g.order())
        throw std::logic_error("representation: wrong number of matrices");
    const auto id = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
    if ((rep.matrices[0] - id).cwiseAbs().maxCoeff() > tol)
        throw std::logic_error("representation: identity not mapped to identity");
    for (Element a = 0; a < g.order(); ++a) {
        const auto& m = rep.matrices[a];
        if ((m * m.adjoint() - id).cwiseAbs().maxCoeff() > tol)
            throw std::logic_error("representation: matrix not unitary");
        for (Element b = 0; b < g.order(); ++b) {
            if ((m * rep.matrices[b] - rep.matrices[g.mul(a, b)]).cwiseAbs().maxCoeff() > tol)
                throw std::logic_error("representation: not a homomorphism");
            if (std::abs(rep.chi(g.conj(a, b)) - rep.chi(a)) > tol)
                throw std::logic_error("representation: character not a class function");
        }
    }
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
    if (a.matrices.size() != b.matrices.size())
        throw std::invalid_argument("direct sum: representations of different groups");
    std::vector<Eigen::MatrixXcd> mats;
    for (std::size_t i = 0; i < a.matrices.size(); ++i) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a.dim + b.dim, a.dim + b.dim);
        m.topLeftCorner(a.dim, a.dim) = a.matrices[i];
        m.bottomRightCorner(b.dim, b.dim) = b.matrices[i];
        mats.push_back(std::move(m));
    }
    return make_rep(std::move(mats));
}

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd rotation(double theta) {
    Eigen::MatrixXcd m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

// Cayley table of a faithful matrix group, listed in the given order.
std::vector<Element> table_from_matrices(const std::vector<Eigen::MatrixXcd>& mats) {
    const int n = static_cast<int>(mats.size());
    std::vector<Element> mult(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Eigen::MatrixXcd p = mats[a] * mats[b];
            for (int c = 0; c < n; ++c)
                if ((p - mats[c]).cwiseAbs().maxCoeff() < 1e-9) {
                    mult[a * n + b] = c;
                    break;
                }
            if (mult[a * n + b] < 0) throw std::logic_error("matrix group not closed");
        }
    return mult;
}

GroupWithRep cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group: order must be positive");
    std::vector<Element> mult(static_cast<std::size_t>(n) * n);
    std::vector<Eigen::MatrixXcd> mats;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) mult[a * n + b] = (a + b) % n;
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = std::polar(1.0, 2.0 * kPi * a / n);
        mats.push_back(m);
    }
    return {GroupTable("cyclic" + std::to_string(n), n, std::move(mult)), make_rep(std::move(mats))};
}

// Rotations r^k at index k, reflections s r^k at index n + k.
GroupWithRep dihedral(int n) {
    if (n < 2) throw std::invalid_argument("dihedral group: n must be at least 2");
    const int order = 2 * n;
    std::vector<Element> mult(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            const bool sa = a >= n, sb = b >= n;
            const int ka = a % n, kb = b % n;
            const int diff = ((kb - ka) % n + n) % n;
            // r^a s r^b = s r^(b-a), s r^a s r^b = r^(b-a)
            int res;
            if (!sa && !sb) res = (ka + kb) % n;
            else if (!sa) res = n + diff;
            else if (!sb) res = n + (ka + kb) % n;
            else res = diff;
            mult[a * order + b] = res;
        }
    Eigen::MatrixXcd s(2, 2);
    s << 1, 0, 0, -1;
    std::vector<Eigen::MatrixXcd> mats;
    for (int a = 0; a < order; ++a) {
        Eigen::MatrixXcd r = rotation(2.0 * kPi * (a % n) / n);
        mats.push_back(a >= n ? Eigen::MatrixXcd(s * r) : r);
    }
    return {GroupTable("dihedral" + std::to_string(n), order, std::move(mult)), make_rep(std::move(mats))};
}

// Permutations of {0,1,2} in lexicographic order; (ab)(i) = a(b(i)).
GroupWithRep symmetric3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int n = static_cast<int>(perms.size());
    std::vector<Element> mult(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            mult[a * n + b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    // orthonormal basis of the sum-zero plane
    Eigen::MatrixXcd u(3, 2);
    u << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto& perm : perms) {
        Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(3, 3);
        for (int i = 0; i < 3; ++i) pm(perm[i], i) = 1;
        mats.push_back(u.adjoint() * pm * u);
    }
    return {GroupTable("symmetric3", n, std::move(mult)), make_rep(std::move(mats))};
}

// Order: 1, -1, i, -i, j, -j, k, -k.
GroupWithRep quaternion8() {
    const Complex I(0, 1);
    Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd qi(2, 2), qj(2, 2), qk(2, 2);
    qi << I, 0, 0, -I;
    qj << 0, 1, -1, 0;
    qk << 0, I, I, 0;
    std::vector<Eigen::MatrixXcd> mats{one, -one, qi, -qi, qj, -qj, qk, -qk};
    auto mult = table_from_matrices(mats);
    return {GroupTable("quaternion8", 8, std::move(mult)), make_rep(std::move(mats))};
}

}  // namespace

GroupWithRep builtin_group(const std::string& family, int param) {
    GroupWithRep out;
    if (family == "cyclic") out = cyclic(param);
    else if (family == "dihedral") out = dihedral(param);
    else if (family == "symmetric") {
        if (param != 3) throw std::invalid_argument("symmetric group: only n = 3 is built in");
        out = symmetric3();
    } else if (family == "quaternion") {
        if (param != 8) throw std::invalid_argument("quaternion group: only order 8 is built in");
        out = quaternion8();
    } else {
        throw std::invalid_argument("unknown group family: " + family);
    }
    out.group.validate();
    validate_rep(out.group, out.rep);
    return out;
}

double delta_G(const GroupTable& g, const UnitaryRep& rep) {
    if (g.order() < 2) throw std::invalid_argument("delta_G: trivial group");
    double best = INFINITY;
    for (Element a = 1; a < g.order(); ++a) best = std::min(best, (rep.chi(0) - rep.chi(a)).real());
    if (best <= 1e-12) throw std::invalid_argument("delta_G: representation has no gap");
    return best;
}

double phi_beta(const UnitaryRep& rep, double beta, Element g) {
    if (beta < 0) throw std::invalid_argument("phi_beta: negative beta");
    return std::exp(-beta * (rep.chi(0) - rep.chi(g)).real());
}

double beta_threshold(const GroupTable& g, const UnitaryRep& rep) {
    if (g.order() < 2) throw std::invalid_argument("beta_threshold: trivial group");
    return (114.0 + 4.0 * std::log(static_cast<double>(g.order()))) / delta_G(g, rep);
}

std::vector<double> gap_table(const UnitaryRep& rep) {
    std::vector<double> gap;
    for (const auto& c : rep.character) gap.push_back((rep.chi(0) - c).real());
    return gap;
}

ClassFunction::ClassFunction(const GroupTable& g, std::vector<Complex> values, double tol)
    : values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != g.order())
        throw std::invalid_argument("class function: wrong number of values");
    for (Element a = 0; a < g.order(); ++a)
        for (Element h = 0; h < g.order(); ++h)
            if (std::abs(values_[g.conj(a, h)] - values_[a]) > tol)
                throw std::invalid_argument("class function: not constant on conjugacy classes");
}

double ClassFunction::sup_norm() const {
    double m = 0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

ClassFunction character_function(const GroupTable& g, const UnitaryRep& rep) {
    return ClassFunction(g, rep.character);
}

}  // namespace lgt
