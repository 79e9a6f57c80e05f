#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qwalk/enumeration.hpp"
#include "qwalk/parse.hpp"
#include "qwalk/series_lab.hpp"

using namespace qwalk;

namespace {

RatFunc rf(const std::string& s) { return parse_ratfunc(s); }

bool zero_through(const Series& s, int n) {
    return s.ord() >= n && s.truncated(n).is_zero();
}

bool coeffs_only_in(const Series& s, Var v) {
    for (int k = s.lo(); k < std::min(s.ord(), s.lo() + static_cast<int>(s.window().size()));
         ++k) {
        RatFunc c = s.coeff(k);
        for (int i = 0; i < NVARS; ++i) {
            Var w = Var(i);
            if (w == v) continue;
            if (c.num().contains(w) || c.den().contains(w)) return false;
        }
    }
    return true;
}

Series kernel_at(const Kernel& ker, const BranchSeries& br, const Series& yb, int ord) {
    std::map<Var, Series> assign{{Var::x, br.x}, {Var::y, yb}};
    return series_of_poly(ker.K, Var::t, ord, assign);
}

// I(y) = 1/(t(1+y)(1+1/y)) + t(1+y)(1+1/y) evaluated on a branch
Series invariant_at(const Series& yb) {
    Series w = Series(Rat(2)) + yb + Series(Rat(1)) / yb;
    return Series(Rat(1)) / w.shifted(1) + w.shifted(1);
}

}

TEST_CASE("generic kernel roots") {
    for (const char* name : {"kreweras", "reversed-kreweras", "gessel"}) {
        StepModel m = *catalog_lookup(name);
        Kernel ker = build_kernel(m);
        BranchSeries br = kernel_root_series(m, XSpec::generic, 10);

        CHECK(zero_through(kernel_at(ker, br, br.Y0, 8), 8));
        CHECK(zero_through(kernel_at(ker, br, br.Y1, 8), 8));

        Series A = series_of_poly(ker.a, Var::t, 12);
        Series B = series_of_poly(ker.b, Var::t, 12);
        Series C = series_of_poly(ker.c, Var::t, 12);
        CHECK(zero_through(br.Y0 + br.Y1 + B / A, 9));
        CHECK(zero_through(br.Y0 * br.Y1 - C / A, 9));

        CHECK(br.Y0.valuation() == 1);
        CHECK(br.Y1.valuation() == -1);
        CHECK(coeffs_only_in(br.Y0, Var::x));
    }

    // small branches, lowest orders
    BranchSeries kw = kernel_root_series(*catalog_lookup("kreweras"), XSpec::generic, 6);
    CHECK(kw.Y0.coeff(1) == rf("1"));
    CHECK(kw.Y0.coeff(2) == rf("1/x"));
    CHECK(kw.Y0.coeff(3) == rf("(x^3 + 1)/x^2"));
    CHECK(kw.Y1.coeff(-1) == rf("1/x"));

    BranchSeries rk = kernel_root_series(*catalog_lookup("reversed-kreweras"), XSpec::generic, 6);
    CHECK(rk.Y0.coeff(1) == rf("1/x"));
    CHECK(rk.Y0.coeff(2) == rf("1"));
    CHECK(rk.Y1.coeff(-1) == rf("1"));

    BranchSeries g = kernel_root_series(*catalog_lookup("gessel"), XSpec::generic, 6);
    CHECK(g.Y0.coeff(1) == rf("1/x"));
    CHECK(g.Y0.coeff(2) == rf("(x^2 + 1)/x^2"));

    CHECK_THROWS_AS(kernel_root_series(*catalog_lookup("kreweras"), XSpec::generic, 2), Error);
}

TEST_CASE("substituted kernel roots") {
    StepModel m = *catalog_lookup("gessel");
    Kernel ker = build_kernel(m);
    BranchSeries br = kernel_root_series(m, XSpec::gessel_substitution, 12);

    CHECK(br.x.coeff(1) == rf("1"));
    CHECK(br.x.coeff(2) == rf("u + 1/u"));

    CHECK(zero_through(kernel_at(ker, br, br.Y0, 10), 10));
    CHECK(zero_through(kernel_at(ker, br, br.Y1, 10), 10));

    std::map<Var, Series> assign{{Var::x, br.x}};
    Series A = series_of_poly(ker.a, Var::t, 16, assign);
    Series B = series_of_poly(ker.b, Var::t, 16, assign);
    Series C = series_of_poly(ker.c, Var::t, 16, assign);
    CHECK(zero_through(br.Y0 + br.Y1 + B / A, 11));
    CHECK(zero_through(br.Y0 * br.Y1 - C / A, 11));

    // both branches are honest Laurent series over the u line
    CHECK(br.Y0.valuation() == -1);
    CHECK(br.Y1.valuation() == -1);
    CHECK(br.Y0.coeff(-1) == rf("1/u"));
    CHECK(br.Y1.coeff(-1) == rf("u"));
    CHECK(coeffs_only_in(br.Y0, Var::u));
    CHECK(coeffs_only_in(br.Y1, Var::u));

    // the substitution is tuned to this kernel; a lopsided model fails to split
    StepModel skew =
        make_model("skew", {{1, 1, Poly(1)}, {-1, 0, Poly(1)}, {-1, -1, Poly(2)}});
    CHECK_THROWS_AS(kernel_root_series(skew, XSpec::gessel_substitution, 6), Error);
    try {
        kernel_root_series(skew, XSpec::gessel_substitution, 6);
    } catch (const Error& e) {
        CHECK(e.code() == Err::NonSquareLeadingTerm);
    }
}

TEST_CASE("invariant identity on the branches") {
    CHECK(certify_gessel_invariant(20) >= 20);
    CHECK_THROWS_AS(certify_gessel_invariant(4), Error);

    StepModel m = *catalog_lookup("gessel");
    BranchSeries br = kernel_root_series(m, XSpec::gessel_substitution, 10);

    // replacing I by the identity map breaks the identity immediately
    Series naive = br.Y0 - br.Y1;
    CHECK(!naive.is_zero());
    CHECK(naive.valuation() == -1);

    // the symmetric combination is a rational function of x and t alone:
    // rewrite through e1 = Y0+Y1 and e2 = Y0 Y1 and compare
    Kernel ker = build_kernel(m);
    RatFunc t1(Poly::var(Var::t));
    RatFunc e1(-ker.b, ker.a);
    RatFunc e2(ker.c, ker.a);
    RatFunc w_sum = RatFunc(4) + e1 + e1 / e2;
    RatFunc w_prod = RatFunc(4) + (e1 + e1 / e2) * RatFunc(2) + e2 + RatFunc(1) / e2 +
                     (e1 * e1 - e2 * RatFunc(2)) / e2;
    RatFunc sum_expr = w_sum / (t1 * w_prod) + t1 * w_sum;
    std::map<Var, Series> assign{{Var::x, br.x}};
    Series via_x = series_of_ratfunc(sum_expr, Var::t, 9, assign);
    Series sum = invariant_at(br.Y0) + invariant_at(br.Y1);
    CHECK(zero_through(sum - via_x, 9));

    // equivalently, the sum only sees u through u + 1/u
    RatFunc uinv = rf("1/u");
    for (int k = sum.lo(); k < 9; ++k) {
        RatFunc c = sum.coeff(k);
        CHECK(c.subst(Var::u, uinv) == c);
    }
}

TEST_CASE("decoupling identity on the branches") {
    CHECK(certify_gessel_decoupling(20) >= 20);
    CHECK_THROWS_AS(certify_gessel_decoupling(3), Error);

    StepModel m = *catalog_lookup("gessel");
    BranchSeries br = kernel_root_series(m, XSpec::gessel_substitution, 12);

    // flipping the sign of the right side leaves twice the left side
    Series one(Rat(1));
    Series lhs = br.x * (br.Y0 - br.Y1);
    Series rhs = one / (one + br.Y1).shifted(1) - one / (one + br.Y0).shifted(1);
    CHECK(zero_through(lhs - rhs, 12));
    Series flipped = lhs + rhs;
    CHECK(!flipped.is_zero());
    CHECK(flipped.valuation() <= 0);
}

TEST_CASE("boundary form of the decoupling identity") {
    // S(Y0) - x Y0 = S(Y1) - x Y1 with S(y) = K(0,y) Q(0,y) from enumeration
    int n = 10;
    StepModel m = *catalog_lookup("gessel");
    Series S = boundary_s(m, q_series(m, 2 * n + 6));
    BranchSeries br = kernel_root_series(m, XSpec::gessel_substitution, n + 4);
    Series s0 = compose_y(S, br.Y0, n);
    Series s1 = compose_y(S, br.Y1, n);
    Series residual = s0 - br.x * br.Y0 - s1 + br.x * br.Y1;
    CHECK(zero_through(residual, n));

    // composition refuses coefficients that are not polynomial in y
    Series bad(rf("1/(1 + y)"));
    CHECK_THROWS_AS(compose_y(bad, br.Y0, 4), Error);
}

TEST_CASE("cubic identity for the boundary series") {
    CubicIdentityReport rep = certify_cubic_identity(15);
    CHECK(rep.ok);
    CHECK(rep.residual_order >= 15);

    CHECK(zero_through(rep.a + Series::mono(1, RatFunc(1)), 15));
    for (const Series* s : {&rep.a, &rep.b, &rep.c, &rep.d}) {
        CHECK(!s->window().empty());
        CHECK(coeffs_only_in(*s, Var::t));
    }

    // b = 2 + t S(0) reproduces the closed-form origin counts
    CHECK(rep.b.coeff(0) == rf("2"));
    for (int k = 0; k <= 5; ++k) {
        CHECK(rep.b.coeff(2 * k + 1).is_zero());
        CHECK(rep.b.coeff(2 * k + 2) == RatFunc(Poly(gessel_closed_form(k))));
    }
    // leading terms of the two derivative-laden coefficients
    CHECK(rep.c.coeff(-1) == rf("-1"));
    CHECK(rep.c.coeff(0).is_zero());
    CHECK(rep.c.coeff(1) == rf("1"));
    CHECK(rep.c.coeff(5) == rf("-1"));
    CHECK(rep.d.coeff(0) == rf("-3"));
    CHECK(rep.d.coeff(2) == rf("-3"));
    CHECK(rep.d.coeff(4) == rf("-13"));

    CHECK_THROWS_AS(certify_cubic_identity(7), Error);
}

TEST_CASE("cubic combination is free of y before the constant is removed") {
    int n = 15;
    StepModel m = *catalog_lookup("gessel");
    Series S = boundary_s(m, q_series(m, n + 6)).truncated(n + 4);
    Series S0 = S.map_coeffs([](const RatFunc& c) { return c.subst(Var::y, RatFunc(0)); });

    Poly y = Poly::var(Var::y);
    Poly one(1);
    Series J = S + Series::mono(-1, RatFunc(one, one + y));
    Series J0 = S0 + Series::mono(-1, RatFunc(1));
    Series I = Series::mono(-1, RatFunc(y, (one + y).pow(2))) +
               Series::mono(1, RatFunc((one + y).pow(2), y));

    CubicIdentityReport rep = certify_cubic_identity(n);
    Series j2 = J * J;
    Series combo = (J - J0) * I - rep.a * (j2 * J) - rep.b * j2 - rep.c * J;
    CHECK(coeffs_only_in(combo, Var::t));
    CHECK(zero_through(combo - rep.d, n));

    // the same identity specialized at rational y values
    for (const char* yv : {"1/2", "-1/3", "2", "1/4", "3"}) {
        RatFunc r = rf(yv);
        auto at_y = [&](const Series& f) {
            return f.map_coeffs([&](const RatFunc& c) { return c.subst(Var::y, r); });
        };
        Series Jr = at_y(J);
        Series Ir = at_y(I);
        Series jr2 = Jr * Jr;
        Series res =
            (Jr - J0) * Ir - rep.a * (jr2 * Jr) - rep.b * jr2 - rep.c * Jr - rep.d;
        CHECK(zero_through(res, n));
    }
}

TEST_CASE("algebraic series for the boundary unknowns") {
    Series Z = z_series(30);
    CHECK(Z.coeff(0) == rf("1"));
    for (int k = 1; k < 30; k += 2) CHECK(Z.coeff(k).is_zero());
    CHECK(Z.coeff(2) == rf("2"));
    CHECK(Z.coeff(4) == rf("16"));
    CHECK(Z.coeff(6) == rf("166"));
    CHECK(Z.coeff(8) == rf("1934"));
    CHECK(Z.coeff(10) == rf("24076"));

    Series t2 = Series::mono(2, RatFunc(1));
    Series z2 = Z * Z;
    Series residual =
        z2 - Series(Rat(1)) - (t2 * z2.pow(3) * RatFunc(256)) / (z2 + Series(Rat(3))).pow(3);
    CHECK(zero_through(residual, 30));

    CHECK_THROWS_AS(z_series(1), Error);
}
