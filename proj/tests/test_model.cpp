#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "qwalk/model.hpp"
#include "qwalk/parse.hpp"

using namespace qwalk;

namespace {

Poly P(const std::string& s) { return parse_ratfunc(s).as_polynomial(); }

StepModel uw(const std::string& name, const std::vector<std::pair<int, int>>& steps) {
    std::vector<std::tuple<int, int, Poly>> v;
    for (auto [i, j] : steps) v.emplace_back(i, j, Poly(1));
    return make_model(name, v);
}

}

TEST_CASE("kernel construction") {
    Kernel k = build_kernel(*catalog_lookup("kreweras"));
    CHECK(k.K == P("t*(x^2*y^2 + x + y) - x*y"));
    CHECK(k.a == P("t*x^2"));
    CHECK(k.b == P("t - x"));
    CHECK(k.c == P("t*x"));
    CHECK(k.at == P("t*y^2"));
    CHECK(k.bt == P("t - y"));
    CHECK(k.ct == P("t*y"));

    Kernel g = build_kernel(*catalog_lookup("gessel"));
    CHECK(g.K == P("t*(y + x^2*y + x^2*y^2 + 1) - x*y"));
    CHECK(g.at == P("t*(y + y^2)"));
    CHECK(g.ct == P("t*(y + 1)"));

    Kernel s = build_kernel(uw("ne", {{1, 1}}));
    CHECK(s.K == P("t*x^2*y^2 - x*y"));
}

TEST_CASE("kernel decompositions agree for the whole catalog") {
    Poly x = Poly::var(Var::x), y = Poly::var(Var::y);
    for (const auto& m : catalog()) {
        Kernel k = build_kernel(m);
        CHECK(k.K == k.a * y * y + k.b * y + k.c);
        CHECK(k.K == k.at * x * x + k.bt * x + k.ct);
        CHECK(k.d == k.b * k.b - Rat(4) * (k.a * k.c));
        // all catalog models are non-singular with cubic or quartic discriminant
        CHECK(!is_singular(m));
        int dd = k.d.degree(Var::x);
        CHECK(dd >= 3);
        CHECK(dd <= 4);
        int ddt = k.dt.degree(Var::y);
        CHECK(ddt >= 3);
        CHECK(ddt <= 4);
    }
}

TEST_CASE("kernel construction is order independent") {
    std::vector<std::tuple<int, int, Poly>> steps = {
        {0, 1, Poly(1)}, {1, 0, Poly(2)}, {-1, -1, Poly(1)}, {0, -1, Poly(1)}};
    std::mt19937 rng(5);
    StepModel base = make_model("m", steps);
    for (int iter = 0; iter < 5; ++iter) {
        std::shuffle(steps.begin(), steps.end(), rng);
        StepModel m = make_model("m-shuffled", steps);
        CHECK(m.canonical_key() == base.canonical_key());
        CHECK(build_kernel(m).K == build_kernel(base).K);
    }
}

TEST_CASE("singularity and symmetry predicates") {
    CHECK(!is_singular(*catalog_lookup("kreweras")));
    CHECK(is_singular(uw("s", {{1, 1}, {1, -1}, {-1, 1}})));
    CHECK(!is_singular(uw("all", {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}})));

    CHECK(is_vertically_symmetric(*catalog_lookup("simple")));
    CHECK(!is_vertically_symmetric(*catalog_lookup("gessel")));
    CHECK(!is_vertically_symmetric(*catalog_lookup("kreweras")));
    // weights must match across the reflection, not just the step set
    StepModel lop = make_model("lop", {{1, 0, Poly(2)}, {-1, 0, Poly(1)}, {0, 1, Poly(1)}, {0, -1, Poly(1)}});
    CHECK(!is_vertically_symmetric(lop));
}

TEST_CASE("catalog contents") {
    auto c3 = catalog_lookup("#3");
    REQUIRE(c3.has_value());
    CHECK(c3->canonical_key() == uw("", {{0, 1}, {1, 1}, {0, -1}, {-1, 0}}).canonical_key());

    auto w2 = catalog_lookup("weighted-2");
    REQUIRE(w2.has_value());
    CHECK(w2->steps.at({-1, 0}) == Poly(1));
    CHECK(w2->steps.at({-1, 1}) == Poly(1));
    CHECK(w2->steps.at({0, 1}) == Poly(2));
    CHECK(w2->steps.at({1, 1}) == Poly(1));
    CHECK(w2->steps.at({1, 0}) == Poly(2));
    CHECK(w2->steps.at({1, -1}) == Poly(1));
    CHECK(w2->steps.at({0, -1}) == Poly(1));

    auto w1 = catalog_lookup("weighted-1");
    REQUIRE(w1.has_value());
    CHECK(w1->has_symbolic_weights());
    CHECK(w1->steps.at({0, -1}) == Poly::var(Var::lam));

    CHECK(all_step_sets().size() == 255);

    int vsym_count = 0;
    for (const auto& m : catalog())
        if (m.name.rfind("vsym-", 0) == 0) {
            ++vsym_count;
            CHECK(is_vertically_symmetric(m));
            Kernel k = build_kernel(m);
            CHECK(k.at == k.ct);
        }
    CHECK(vsym_count == 16);
}

TEST_CASE("reflections move steps and weights together") {
    StepModel kre = *catalog_lookup("kreweras");
    CHECK(diagonal_reflection(kre).canonical_key() == kre.canonical_key());
    StepModel vk = vertical_reflection(kre);
    CHECK(vk.canonical_key() == uw("", {{-1, 1}, {1, 0}, {0, -1}}).canonical_key());

    // weighted-4 is the vertical reflection of weighted-2
    StepModel w2 = *catalog_lookup("weighted-2");
    StepModel w4 = *catalog_lookup("weighted-4");
    CHECK(vertical_reflection(w2).canonical_key() == w4.canonical_key());

    // weighted-3 is the half-turn rotation of weighted-2
    StepModel w3 = *catalog_lookup("weighted-3");
    StepModel rot = vertical_reflection(diagonal_reflection(vertical_reflection(diagonal_reflection(w2))));
    CHECK(rot.canonical_key() == w3.canonical_key());
    // and weighted-2 itself is diagonally symmetric
    CHECK(diagonal_reflection(w2).canonical_key() == w2.canonical_key());
    CHECK(diagonal_reflection(w3).canonical_key() == w3.canonical_key());
}

TEST_CASE("model files") {
    StepModel m = load_model_json(R"({"name": "demo", "steps": [[1, 1, "1"], [0, -1, "lam"], [-1, 0, "3/2"]]})");
    CHECK(m.name == "demo");
    CHECK(m.steps.at({1, 1}) == Poly(1));
    CHECK(m.steps.at({0, -1}) == Poly::var(Var::lam));
    CHECK(m.steps.at({-1, 0}) == Poly(Rat(3, 2)));

    CHECK_THROWS_AS(load_model_json("{}"), Error);
    CHECK_THROWS_AS(load_model_json(R"({"name": "m", "steps": [[2, 0, "1"]]})"), Error);
    CHECK_THROWS_AS(load_model_json(R"({"name": "m", "steps": [[1, 0, "0"]]})"), Error);
    CHECK_THROWS_AS(load_model_json(R"({"name": "m", "steps": [[1, 0, "x"]]})"), Error);
    CHECK_THROWS_AS(load_model_json(R"({"name": "m", "steps": [[1, 0, "1"], [1, 0, "2"]]})"), Error);
    CHECK_THROWS_AS(load_model_json("not json"), Error);
}
