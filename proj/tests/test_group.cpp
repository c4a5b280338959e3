#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lgt/group.hpp"

using namespace lgt;

TEST_CASE("cyclic groups: table, classes and gap") {
    for (int n = 2; n <= 7; ++n) {
        const GroupWithRep gr = builtin_group("cyclic", n);
        CHECK(gr.group.order() == n);
        CHECK(gr.group.is_abelian());
        CHECK(conjugacy_classes(gr.group).size() == static_cast<std::size_t>(n));
        CHECK(center(gr.group).size() == static_cast<std::size_t>(n));
        // smallest gap of the fundamental character is at the generator
        CHECK(delta_G(gr.group, gr.rep) == doctest::Approx(1 - std::cos(2 * std::numbers::pi / n)).epsilon(1e-14));
    }
}

TEST_CASE("nonabelian families") {
    struct Expect {
        const char* family;
        int param, order, classes, center;
    };
    for (const Expect& e : {Expect{"symmetric", 3, 6, 3, 1}, Expect{"dihedral", 4, 8, 5, 2},
                            Expect{"dihedral", 5, 10, 4, 1}, Expect{"quaternion", 8, 8, 5, 2}}) {
        CAPTURE(e.family);
        const GroupWithRep gr = builtin_group(e.family, e.param);
        CHECK(gr.group.order() == e.order);
        CHECK_FALSE(gr.group.is_abelian());
        CHECK(conjugacy_classes(gr.group).size() == static_cast<std::size_t>(e.classes));
        CHECK(center(gr.group).size() == static_cast<std::size_t>(e.center));
    }
}

TEST_CASE("S3 standard character takes 2, 0, -1") {
    const GroupWithRep gr = builtin_group("symmetric", 3);
    CHECK(gr.rep.dim == 2);
    int twos = 0, zeros = 0, minus = 0;
    for (const Complex& c : gr.rep.character) {
        CHECK(std::abs(c.imag()) < 1e-12);
        if (std::abs(c.real() - 2) < 1e-12) ++twos;
        if (std::abs(c.real()) < 1e-12) ++zeros;
        if (std::abs(c.real() + 1) < 1e-12) ++minus;
    }
    CHECK(twos == 1);
    CHECK(zeros == 3);
    CHECK(minus == 2);
    CHECK(delta_G(gr.group, gr.rep) == doctest::Approx(2.0));
}

TEST_CASE("threshold for Z2 sign") {
    const GroupWithRep gr = builtin_group("cyclic", 2);
    // (114 + 4 ln 2) / 2 worked out by hand
    CHECK(beta_threshold(gr.group, gr.rep) == doctest::Approx(57 + 2 * std::log(2.0)).epsilon(1e-15));
    CHECK(std::abs(beta_threshold(gr.group, gr.rep) - 58.386) < 1e-3);
}

TEST_CASE("phi_beta and gap table") {
    const GroupWithRep gr = builtin_group("cyclic", 3);
    const std::vector<double> gap = gap_table(gr.rep);
    CHECK(gap[0] == 0);
    CHECK(phi_beta(gr.rep, 0.7, 1) == doctest::Approx(std::exp(-0.7 * 1.5)));
    CHECK(phi_beta(gr.rep, 0.0, 2) == 1.0);
    CHECK_THROWS(phi_beta(gr.rep, -1, 1));
}

TEST_CASE("class functions reject non-class data") {
    const GroupWithRep gr = builtin_group("symmetric", 3);
    std::vector<Complex> v(6, 0.0);
    v[1] = 1;  // a lone non-identity element never fills its class
    CHECK_THROWS(ClassFunction(gr.group, v));
    const ClassFunction chi = character_function(gr.group, gr.rep);
    CHECK(chi.sup_norm() == doctest::Approx(2.0));
}

TEST_CASE("validation catches broken input") {
    CHECK_THROWS(builtin_group("cyclic", 0));
    CHECK_THROWS(builtin_group("symmetric", 4));
    CHECK_THROWS(builtin_group("nope", 2));
    // not associative: a 3-element loop that is not a group
    std::vector<Element> bad{0, 1, 2, 1, 0, 2, 2, 2, 0};
    CHECK_THROWS(GroupTable("bad", 3, bad).validate());
}

TEST_CASE("direct sum adds characters") {
    const GroupWithRep gr = builtin_group("cyclic", 4);
    const UnitaryRep r = direct_sum(gr.rep, gr.rep);
    CHECK(r.dim == 2);
    for (int g = 0; g < 4; ++g) CHECK(std::abs(r.chi(g) - 2.0 * gr.rep.chi(g)) < 1e-12);
    validate_rep(gr.group, r);
}
