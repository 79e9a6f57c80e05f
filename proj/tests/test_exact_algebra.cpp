#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qwalk/linsolve.hpp"
#include "qwalk/parse.hpp"
#include "qwalk/poly.hpp"
#include "qwalk/ratfunc.hpp"
#include "qwalk/series.hpp"
#include "qwalk/symmetrize.hpp"

using namespace qwalk;

namespace {

Poly P(const std::string& s) {
    RatFunc f = parse_ratfunc(s);
    return f.as_polynomial();
}

RatFunc R(const std::string& s) {
    return parse_ratfunc(s);
}

Poly random_poly(std::mt19937& rng, int nterms, int maxdeg) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    Poly p;
    for (int i = 0; i < nterms; ++i) {
        Exps e{};
        e[static_cast<int>(Var::t)] = static_cast<int16_t>(deg(rng));
        e[static_cast<int>(Var::x)] = static_cast<int16_t>(deg(rng));
        e[static_cast<int>(Var::y)] = static_cast<int16_t>(deg(rng));
        p.add_term(e, Rat(coeff(rng)));
    }
    return p;
}

}

TEST_CASE("rational scalar helpers") {
    CHECK(rat_sqrt(Rat(4, 9)).value() == Rat(2, 3));
    CHECK(!rat_sqrt(Rat(2)).has_value());
    CHECK(!rat_sqrt(Rat(-1)).has_value());
    CHECK(pochhammer(Rat(1, 2), 3) == Rat(1, 2) * Rat(3, 2) * Rat(5, 2));
    CHECK(pochhammer(Rat(5, 6), 0) == 1);
}

TEST_CASE("polynomial arithmetic cancels and expands") {
    Poly x = Poly::var(Var::x);
    Poly y = Poly::var(Var::y);
    CHECK((x + y) + (x - y) == Rat(2) * x);
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK(P("t*(x^2*y^2+x+y) - x*y") == P("t*x^2*y^2 + t*x + t*y - x*y"));
}

TEST_CASE("polynomial structure accessors") {
    Poly k = P("t*x^2*y^2 + t*x + t*y - x*y");
    CHECK(k.degree(Var::x) == 2);
    CHECK(k.degree(Var::y) == 2);
    CHECK(k.coeff_of(Var::y, 2) == P("t*x^2"));
    CHECK(k.coeff_of(Var::y, 1) == P("t - x"));
    CHECK(k.coeff_of(Var::y, 0) == P("t*x"));
    CHECK(k.derivative(Var::y) == P("2*t*x^2*y + t - x"));
    CHECK(k.subst(Var::y, Poly(Rat(0))) == P("t*x"));
    CHECK(k.swap_vars(Var::x, Var::y) == P("t*y^2*x^2 + t*y + t*x - y*x"));
    std::array<Rat, NVARS> vals{Rat(1, 2), Rat(2), Rat(3), Rat(0), Rat(0)};
    CHECK(k.eval(vals) == Rat(1, 2) * Rat(4) * Rat(9) + Rat(1) + Rat(3, 2) - Rat(6));
}

TEST_CASE("exact division") {
    CHECK(*exact_divide(P("x^2 - y^2"), P("x - y")) == P("x + y"));
    CHECK(!exact_divide(P("x^2 - y^2"), P("x + 1")).has_value());
    std::mt19937 rng(7);
    int done = 0;
    while (done < 100) {
        Poly p = random_poly(rng, 3, 4);
        Poly k = random_poly(rng, 2, 4);
        if (k.is_zero()) continue;
        auto q = exact_divide(p * k, k);
        REQUIRE(q.has_value());
        CHECK(*q == p);
        ++done;
    }
}

TEST_CASE("gcd, resultant, polynomial square root") {
    Poly s = P("x + y");
    Poly g = poly_gcd(s * s, s * P("x - y"));
    CHECK(normalize_unit(g) == s);
    CHECK(resultant(P("y^2 - x"), P("y - x"), Var::y) == P("x^2 - x"));
    CHECK(*poly_sqrt(P("(x + y + t)^2")) == P("x + y + t"));
    CHECK(*poly_sqrt(P("4*x^2")) == P("2*x"));
    CHECK(!poly_sqrt(P("x^2 + 1")).has_value());
    CHECK(!poly_sqrt(P("x^3")).has_value());
}

TEST_CASE("ratfunc normalization") {
    RatFunc f(P("2*x^2"), P("4*x"));
    CHECK(f == R("x/2"));
    // rational content lives in the numerator, denominator is integer-primitive
    CHECK(f.num() == P("x/2"));
    CHECK(f.den() == P("1"));
    CHECK(RatFunc(P("x^2 - 1"), P("x - 1")) == R("x + 1"));
    // 1/y-cleared t(1+y)(1+1/y) stays reduced
    RatFunc g(P("t*(1+y)^2"), P("y"));
    CHECK(g.num() == P("t*(1+y)^2"));
    CHECK(g.den() == P("y"));
    // denominator sign convention: positive leading coefficient
    RatFunc h(P("x"), P("-2*y"));
    CHECK(h.den() == P("y"));
    CHECK(h.num() == P("-x/2"));
}

TEST_CASE("ratfunc field laws on random inputs") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 25; ++iter) {
        Poly pa = random_poly(rng, 2, 2), pb = random_poly(rng, 2, 2), pc = random_poly(rng, 2, 2);
        Poly da = random_poly(rng, 2, 2), db = random_poly(rng, 2, 2);
        if (da.is_zero() || db.is_zero()) continue;
        RatFunc a(pa, da), b(pb, db), c(pc);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        // normalization is idempotent
        RatFunc renorm(a.num(), a.den());
        CHECK(renorm == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("ratfunc substitution and derivative") {
    RatFunc f = R("(t*y^2 - y - t) / y");
    RatFunc inv = f.subst(Var::y, R("1/y"));
    CHECK(inv == R("(t - y - t*y^2) / y"));
    RatFunc d = R("1/(1-y)").derivative(Var::y);
    CHECK(d == R("1/(1-y)^2"));
}

TEST_CASE("expression parser round trips and rejects junk") {
    CHECK(R("t*y^2 - y - t/y") == RatFunc(P("t*y^3 - y^2 - t"), P("y")));
    CHECK(R("(1+2*t)/(1+y)") == RatFunc(P("1+2*t"), P("1+y")));
    CHECK(R("x^-2") == RatFunc(Poly(1), P("x^2")));
    CHECK(R("-y - 1/y") == RatFunc(P("-y^2-1"), P("y")));
    CHECK(R("lam*t") == RatFunc(P("lam*t")));
    CHECK(R("2^3") == RatFunc(Rat(8)));
    RatFunc f = R("(t*x - 1)/(x^2 + t)");
    CHECK(parse_ratfunc(f.str()) == f);
    CHECK_THROWS_AS(parse_ratfunc("t+*y"), Error);
    CHECK_THROWS_AS(parse_ratfunc("w+1"), Error);
    CHECK_THROWS_AS(parse_ratfunc("(t"), Error);
    CHECK_THROWS_AS(parse_ratfunc("1/0"), Error);
}

TEST_CASE("series arithmetic") {
    Series t = Series::sym_T();
    Series one(Rat(1));
    Series a = (one + t).truncated(5) * (one - t).truncated(5);
    CHECK(a.ord() == 5);
    CHECK(a.coeff(0) == RatFunc(1));
    CHECK(a.coeff(1).is_zero());
    CHECK(a.coeff(2) == RatFunc(Rat(-1)));
    CHECK(a.coeff(3).is_zero());
    CHECK(a.coeff(4).is_zero());

    Series s = series_sqrt((one + t * Series(Rat(4))).truncated(3));
    CHECK(s.coeff(0) == RatFunc(1));
    CHECK(s.coeff(1) == RatFunc(2));
    CHECK(s.coeff(2) == RatFunc(Rat(-2)));
}

TEST_CASE("series division round trip and valuations") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<RatFunc> ac, bc;
        for (int i = 0; i < 6; ++i) {
            ac.push_back(RatFunc(Rat(coeff(rng))));
            bc.push_back(RatFunc(Rat(coeff(rng))));
        }
        if (bc[0].is_zero()) bc[0] = RatFunc(1);
        Series a(-1, 5, ac);
        Series b(0, 6, bc);
        Series q = a / b;
        Series back = q * b;
        Series diff = back - a.truncated(back.ord());
        CHECK(diff.is_zero());
    }
    // dividing by t shifts the valuation down
    Series t = Series::sym_T();
    Series inv = Series(Rat(1)) / t;
    CHECK(inv.exact());
    CHECK(inv.lo() == -1);
}

TEST_CASE("series square root enforces field closure") {
    Series t = Series::sym_T();
    Series x_sym(RatFunc(Poly::var(Var::x)));
    // odd valuation
    CHECK_THROWS_AS(series_sqrt(t.truncated(4)), Error);
    // leading coefficient x is not a square in the coefficient field
    CHECK_THROWS_AS(series_sqrt((x_sym + t).truncated(4)), Error);
    // x^2 leading is fine
    Series ok = series_sqrt((x_sym * x_sym + t).truncated(4));
    CHECK(ok.coeff(0) == RatFunc(Poly::var(Var::x)));
}

TEST_CASE("small kernel root as a series in t") {
    // K = t(x^2 y^2 + x + y) - xy, branch vanishing at t = 0
    Poly a = P("t*x^2"), b = P("t - x"), c = P("t*x");
    int N = 8;
    Series d = series_of_poly(b * b - Rat(4) * (a * c), Var::t, N);
    Series y0 = (-series_of_poly(b, Var::t, N) - series_sqrt(d)) /
                (Series(Rat(2)) * series_of_poly(a, Var::t, N));
    CHECK(y0.coeff(1) == RatFunc(1));
    CHECK(y0.coeff(2) == R("1/x"));
    CHECK(y0.coeff(3) == R("x + 1/x^2"));
    // residual of the kernel at the root vanishes to the full order
    Series res = series_of_poly(P("t*(x^2*y^2 + x + y) - x*y"), Var::t, N, {{Var::y, y0}});
    CHECK(res.is_zero());
}

TEST_CASE("symmetrize against an independent resultant computation") {
    // Kreweras and Gessel elementary symmetric functions of the kernel roots
    SUBCASE("h = y reads off e1 and e2") {
        RatFunc e1 = R("(x - t)/(t*x^2)"), e2 = R("1/x");
        SymPair p = symmetrize(R("y"), e1, e2);
        CHECK(p.sum == e1);
        CHECK(p.product == e2);
        // gessel
        SymPair g = symmetrize(R("y"), R("(x - t - t*x^2)/(t*x^2)"), R("1/x^2"));
        CHECK(g.sum == R("(x - t - t*x^2)/(t*x^2)"));
        CHECK(g.product == R("1/x^2"));
    }
    SUBCASE("random h cross-checked via resultants") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> coeff(-2, 2);
        auto rnd = [&] {
            Poly p;
            for (int i = 0; i <= 2; ++i) {
                int cv = coeff(rng);
                if (cv) p += Poly::var(Var::y, i) * Rat(cv) + Poly::var(Var::t) * Poly::var(Var::y, i) * Rat(coeff(rng));
            }
            return p;
        };
        int done = 0;
        while (done < 20) {
            Poly num = rnd(), den = rnd();
            if (den.is_zero()) continue;
            // quadratic with e1 = -(t-x)/(t x^2)... use the Kreweras pair cleared
            Poly qa = P("t*x^2"), qb = P("t - x"), qc = P("t*x");
            RatFunc e1(-qb, qa), e2(qc, qa);
            RatFunc h(num, den);
            SymPair sp;
            try {
                sp = symmetrize(h, e1, e2);
            } catch (const Error& e) {
                REQUIRE(e.code() == Err::BranchPole);
                continue;
            }
            // resultant route: Res_y(qa y^2 + qb y + qc, u*den - num) = qa^2 den(Y0)den(Y1)(u - h(Y0))(u - h(Y1))
            Poly lin = Poly::var(Var::u) * den - num;
            Poly res = resultant(qa * Poly::var(Var::y, 2) + qb * Poly::var(Var::y) + qc, lin, Var::y);
            auto in_u = res.coeffs_in(Var::u);
            Poly A = in_u.count(2) ? in_u[2] : Poly();
            Poly B = in_u.count(1) ? in_u[1] : Poly();
            Poly C = in_u.count(0) ? in_u[0] : Poly();
            REQUIRE(!A.is_zero());
            CHECK(sp.sum == RatFunc(-B, A));
            CHECK(sp.product == RatFunc(C, A));
            // discriminant identity quoted for invariants
            RatFunc disc = sp.sum * sp.sum - RatFunc(4) * sp.product;
            CHECK(disc == RatFunc(B * B - Rat(4) * (A * C), A * A));
            ++done;
        }
    }
}

TEST_CASE("linear solver over the rational function field") {
    RatFunc t(Poly::var(Var::t));
    SUBCASE("identity system") {
        auto sol = linsolve({{RatFunc(1), RatFunc(0)}, {RatFunc(0), RatFunc(1)}},
                            {t, RatFunc(1) / t});
        REQUIRE(sol.has_value());
        CHECK((*sol)[0] == t);
        CHECK((*sol)[1] == RatFunc(1) / t);
    }
    SUBCASE("underdetermined sets free variables to zero") {
        auto sol = linsolve({{RatFunc(1), RatFunc(1)}}, {RatFunc(0)});
        REQUIRE(sol.has_value());
        CHECK((*sol)[0].is_zero());
        CHECK((*sol)[1].is_zero());
        auto sol2 = linsolve({{RatFunc(1), RatFunc(1)}}, {t});
        REQUIRE(sol2.has_value());
        CHECK((*sol2)[0] == t);
        CHECK((*sol2)[1].is_zero());
    }
    SUBCASE("inconsistent returns absent") {
        auto sol = linsolve({{RatFunc(1), RatFunc(1)}, {RatFunc(2), RatFunc(2)}},
                            {RatFunc(1), RatFunc(3)});
        CHECK(!sol.has_value());
    }
    SUBCASE("random systems substitute back exactly") {
        std::mt19937 rng(23);
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (int iter = 0; iter < 10; ++iter) {
            size_t n = 4;
            std::vector<std::vector<RatFunc>> m(n, std::vector<RatFunc>(n));
            std::vector<RatFunc> rhs(n);
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j)
                    m[i][j] = RatFunc(Poly(Rat(coeff(rng))) + Poly::var(Var::t) * Rat(coeff(rng)));
                rhs[i] = RatFunc(Poly(Rat(coeff(rng))));
            }
            auto sol = linsolve(m, rhs);
            if (!sol) continue;
            for (size_t i = 0; i < n; ++i) {
                RatFunc acc;
                for (size_t j = 0; j < n; ++j) acc += m[i][j] * (*sol)[j];
                CHECK(acc == rhs[i]);
            }
        }
    }
}
