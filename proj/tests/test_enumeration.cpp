#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qwalk/enumeration.hpp"
#include "qwalk/parse.hpp"

using namespace qwalk;

namespace {

Poly P(const std::string& s) { return parse_ratfunc(s).as_polynomial(); }

Rat total_count(const CountTable& tab, int n) {
    Rat s = 0;
    for (int i = 0; i < tab.side; ++i)
        for (int j = 0; j < tab.side; ++j) {
            const Poly& q = tab.at(i, j, n);
            if (!q.is_zero()) s += q.constant_value();
        }
    return s;
}

}

TEST_CASE("frozen counts for small walks") {
    CountTable kw = count_walks(*catalog_lookup("kreweras"), 6);
    CHECK(kw.at(0, 0, 0) == Poly(1));
    CHECK(kw.at(0, 0, 1).is_zero());
    CHECK(kw.at(0, 0, 2).is_zero());
    CHECK(kw.at(0, 0, 3) == Poly(2));
    CHECK(kw.at(0, 0, 6) == Poly(16));
    CHECK(kw.at(1, 1, 1) == Poly(1));
    CHECK(kw.at(1, 0, 2) == Poly(1));

    CountTable g = count_walks(*catalog_lookup("gessel"), 4);
    CHECK(g.at(0, 0, 2) == Poly(2));
    CHECK(g.at(0, 0, 4) == Poly(11));
    CHECK(g.at(0, 0, 1).is_zero());
    CHECK(g.at(0, 0, 3).is_zero());

    CountTable triv = count_walks(*catalog_lookup("simple"), 0);
    CHECK(triv.n_max == 0);
    CHECK(triv.at(0, 0, 0) == Poly(1));
    Rat tot = total_count(triv, 0);
    CHECK(tot == 1);
}

TEST_CASE("out of range lookups and bad input") {
    CountTable kw = count_walks(*catalog_lookup("kreweras"), 3);
    CHECK(kw.at(-1, 0, 1).is_zero());
    CHECK(kw.at(0, 0, 7).is_zero());
    CHECK(kw.at(kw.side, 0, 1).is_zero());
    CHECK_THROWS_AS(count_walks(*catalog_lookup("kreweras"), -1), Error);
    CHECK_THROWS_AS(count_walks(*catalog_lookup("kreweras"), 3, {-1, 0}), Error);
}

TEST_CASE("start offset shifts the table") {
    CountTable tab = count_walks(*catalog_lookup("simple"), 2, {1, 0});
    CHECK(tab.at(1, 0, 0) == Poly(1));
    CHECK(tab.at(0, 0, 1) == Poly(1));
    CHECK(tab.at(2, 0, 1) == Poly(1));
    CHECK(tab.at(1, 1, 1) == Poly(1));
    Rat tot = total_count(tab, 1);
    CHECK(tot == 3);
    CHECK(tab.at(3, 0, 2) == Poly(1));
}

TEST_CASE("generating function and boundary sections") {
    StepModel m = *catalog_lookup("simple");
    QSeries qs = q_series(m, 6);
    CHECK(qs.coeff[0] == Poly(1));
    CHECK(qs.coeff[1] == P("x + y"));
    CHECK(qs.coeff[2] == P("x^2 + 2*x*y + y^2 + 2"));

    Series R = boundary_r(m, qs);
    Series S = boundary_s(m, qs);
    // R(0) = S(0) as series in t
    RatFunc zero_rf(0);
    Series R0 = R.map_coeffs([&](const RatFunc& f) { return f.subst(Var::x, zero_rf); });
    Series S0 = S.map_coeffs([&](const RatFunc& f) { return f.subst(Var::y, zero_rf); });
    CHECK((R0 - S0).is_zero());
    // R = t x Q(x,0) for the simple walk, so its t^3 coefficient is x times
    // the x-section of the t^2 coefficient of Q
    CHECK(R.coeff(3) == RatFunc(Poly::var(Var::x) * P("x^2 + 2")));
}

TEST_CASE("functional equation holds across the catalog") {
    for (const StepModel& m : catalog()) {
        CAPTURE(m.name);
        FunctionalEquationReport rep = check_functional_equation(m, 12);
        CHECK(rep.ok);
        CHECK(rep.residual.is_zero());
    }
}

TEST_CASE("functional equation detects a corrupted table") {
    StepModel m = *catalog_lookup("kreweras");
    Kernel ker = build_kernel(m);
    QSeries qs = q_series(m, 6);
    qs.coeff[4] += P("x^2*y");
    Poly Q;
    for (int n = 0; n <= qs.N; ++n)
        Q += Poly::var(Var::t, n) * qs.coeff[n];
    Poly R = ker.c * Q.subst(Var::y, Poly(0));
    Poly S = ker.ct * Q.subst(Var::x, Poly(0));
    Poly R0 = R.subst(Var::x, Poly(0));
    Poly E = ker.K * Q - R - S + R0 + Poly::var(Var::x) * Poly::var(Var::y);
    Poly trunc;
    for (const auto& [e, c] : E.terms())
        if (e[static_cast<int>(Var::t)] <= qs.N) trunc.add_term(e, c);
    CHECK(!trunc.is_zero());
}

TEST_CASE("total mass bound and parity") {
    StepModel m = *catalog_lookup("simple");
    CountTable tab = count_walks(m, 8);
    Rat pw = 1;
    for (int n = 0; n <= 8; ++n) {
        Rat tot = total_count(tab, n);
        CHECK(tot <= pw);
        if (n >= 2) CHECK(tot < pw);
        pw *= 4;
    }
    for (int n = 0; n <= 8; ++n)
        for (int i = 0; i < tab.side; ++i)
            for (int j = 0; j < tab.side; ++j)
                if ((i + j + n) % 2 != 0) CHECK(tab.at(i, j, n).is_zero());
}

TEST_CASE("symbolic weights match instantiated weights") {
    StepModel sym = *catalog_lookup("weighted-1");
    REQUIRE(sym.has_symbolic_weights());
    std::vector<std::tuple<int, int, Poly>> inst;
    for (const auto& [st, w] : sym.steps) {
        Poly wi = w.subst(Var::lam, Poly(rat(3, 2)));
        inst.emplace_back(st.first, st.second, wi);
    }
    StepModel num = make_model("weighted-1-inst", inst);

    CountTable a = count_walks(sym, 8);
    CountTable b = count_walks(num, 8);
    for (int n = 0; n <= 8; ++n)
        for (int i = 0; i < a.side; ++i)
            for (int j = 0; j < a.side; ++j)
                CHECK(a.at(i, j, n).subst(Var::lam, Poly(rat(3, 2))) == b.at(i, j, n));

    FunctionalEquationReport rep = check_functional_equation(num, 10);
    CHECK(rep.ok);
}

TEST_CASE("closed form matches the gessel table") {
    CHECK(gessel_closed_form(0) == 1);
    CHECK(gessel_closed_form(1) == 2);
    CHECK(gessel_closed_form(2) == 11);
    CountTable g = count_walks(*catalog_lookup("gessel"), 16);
    for (int n = 0; n <= 8; ++n) {
        const Poly& q = g.at(0, 0, 2 * n);
        Rat dp = q.is_zero() ? Rat(0) : q.constant_value();
        CHECK(gessel_closed_form(n) == dp);
        if (2 * n + 1 <= 16) CHECK(g.at(0, 0, 2 * n + 1).is_zero());
    }
    CHECK_THROWS_AS(gessel_closed_form(-1), Error);
}
