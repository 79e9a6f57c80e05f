#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qwalk/group.hpp"
#include "qwalk/parse.hpp"

using namespace qwalk;

TEST_CASE("generator formulas") {
    BirationalPair phi = phi_map(*catalog_lookup("gessel"));
    CHECK(phi.fx == parse_ratfunc("1/(x*y)"));
    CHECK(phi.fy == parse_ratfunc("y"));

    BirationalPair sphi = phi_map(*catalog_lookup("simple"));
    CHECK(sphi.fx == parse_ratfunc("1/x"));
    CHECK(sphi.fy == parse_ratfunc("y"));
    BirationalPair spsi = psi_map(*catalog_lookup("simple"));
    CHECK(spsi.fy == parse_ratfunc("1/y"));
}

TEST_CASE("generators are involutions on every catalog model") {
    BirationalPair id = identity_map();
    for (const auto& m : catalog()) {
        BirationalPair phi = phi_map(m);
        BirationalPair psi = psi_map(m);
        CHECK(same_map(compose(phi, phi), id));
        CHECK(same_map(compose(psi, psi), id));
    }
}

TEST_CASE("degenerate kernels are rejected") {
    StepModel ne = make_model("ne", {{1, 1, Poly(1)}});
    CHECK_THROWS_AS(phi_map(ne), Error);
    StepModel up = make_model("up", {{1, 1, Poly(1)}, {-1, 1, Poly(1)}, {0, -1, Poly(1)}});
    // a, at, c all fine but ct = 0: no step with i = -1 ... here (-1,1) exists, use a truly x-one-sided set
    StepModel right = make_model("right", {{1, 1, Poly(1)}, {1, -1, Poly(1)}});
    CHECK_THROWS_AS(phi_map(right), Error);
    (void)up;
}

TEST_CASE("orbit verdicts for known models") {
    CHECK(orbit(*catalog_lookup("simple"), 100).order == 4);
    CHECK(orbit(*catalog_lookup("simple"), 100).finite);
    OrbitReport g = orbit(*catalog_lookup("gessel"), 100);
    CHECK(g.finite);
    CHECK(g.order == 8);
    OrbitReport k = orbit(*catalog_lookup("kreweras"), 100);
    CHECK(k.finite);
    CHECK(k.order == 6);
    CHECK(orbit(*catalog_lookup("reversed-kreweras"), 100).order == 6);
    CHECK(orbit(*catalog_lookup("double-kreweras"), 100).order == 6);

    OrbitReport m3 = orbit(*catalog_lookup("#3"), 400);
    CHECK(!m3.finite);
    CHECK(m3.order == 400);
    CHECK(m3.elements.empty());
}

TEST_CASE("finite orbits are closed, even sized, and contain the generators") {
    for (const char* name : {"simple", "kreweras", "gessel", "table3-1", "table3-6", "vsym-7"}) {
        StepModel m = *catalog_lookup(name);
        OrbitReport rep = orbit(m, 100);
        REQUIRE(rep.finite);
        CHECK(rep.order % 2 == 0);
        CHECK(rep.order == static_cast<int>(rep.elements.size()));
        BirationalPair phi = phi_map(m), psi = psi_map(m);
        auto contains = [&](const BirationalPair& g) {
            for (const auto& e : rep.elements)
                if (same_map(e, g)) return true;
            return false;
        };
        CHECK(contains(identity_map()));
        CHECK(contains(phi));
        CHECK(contains(psi));
        // closure under both generators
        for (const auto& e : rep.elements) {
            CHECK(contains(compose(phi, e)));
            CHECK(contains(compose(psi, e)));
        }
    }
}

TEST_CASE("weighted models keep lam symbolic through the orbit") {
    StepModel w1 = *catalog_lookup("weighted-1");
    OrbitReport rep = orbit(w1, 100);
    REQUIRE(rep.finite);
    CHECK(rep.order % 2 == 0);
    bool lam_seen = false;
    for (const auto& e : rep.elements)
        if (e.fy.num().contains(Var::lam) || e.fy.den().contains(Var::lam)) lam_seen = true;
    CHECK(lam_seen);
}

TEST_CASE("table 1 weighted orbits are finite, table 2 orbits are not within 400") {
    for (const char* name : {"weighted-1", "weighted-2", "weighted-3", "weighted-4"}) {
        OrbitReport rep = orbit(*catalog_lookup(name), 400);
        CHECK(rep.finite);
        CHECK(rep.order % 2 == 0);
    }
    for (const char* name : {"#1", "#5", "#9"}) {
        OrbitReport rep = orbit(*catalog_lookup(name), 400);
        CHECK(!rep.finite);
    }
}
