#include "qwalk/series_lab.hpp"

#include "qwalk/enumeration.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

Series inv(const Series& s) {
    return Series(Rat(1)) / s;
}

// first order at which r fails to vanish, or its truncation order
int verified_order(const Series& r, int need, const char* what) {
    if (r.is_zero()) return r.ord();
    int k = r.valuation();
    if (k < need)
        fail(Err::Internal,
             std::string(what) + " residual nonzero at t^" + std::to_string(k));
    return k;
}

StepModel gessel_model() {
    auto m = catalog_lookup("gessel");
    if (!m) fail(Err::Internal, "gessel missing from catalog");
    return *m;
}

// S(y) = K(0,y) Q(0,y) as a series in t, known modulo t^(n_max+1)
Series boundary_s_series(const StepModel& m, int n_max) {
    return boundary_s(m, q_series(m, n_max));
}

}  // namespace

BranchSeries kernel_root_series(const StepModel& m, XSpec spec, int N) {
    if (N < 3) fail(Err::BadInput, "kernel_root_series needs N >= 3");
    Kernel ker = build_kernel(m);
    if (ker.a.is_zero() || ker.d.is_zero())
        fail(Err::DegenerateKernel, "kernel is not a genuine quadratic in y");

    int W = N + 12;
    std::map<Var, Series> assign;
    Series xs;
    if (spec == XSpec::gessel_substitution) {
        RatFunc u(Poly::var(Var::u));
        xs = Series::mono(1, RatFunc(1)) + Series::mono(2, u + RatFunc(1) / u);
        assign.emplace(Var::x, xs);
    } else {
        xs = Series(RatFunc(Poly::var(Var::x)));
    }
    Series A = series_of_poly(ker.a, Var::t, W, assign);
    Series B = series_of_poly(ker.b, Var::t, W, assign);
    Series C = series_of_poly(ker.c, Var::t, W, assign);
    Series s = series_sqrt(B * B - A * C * RatFunc(4));
    Series two_a = A * RatFunc(2);
    Series y_minus = (-B - s) / two_a;
    Series y_plus = (-B + s) / two_a;
    if (y_minus.ord() < N || y_plus.ord() < N)
        fail(Err::Internal, "root series lost too much precision");

    // label the small branch Y0; on ties keep the minus branch there
    bool swap_roots =
        !y_plus.is_zero() && !y_minus.is_zero() &&
        y_plus.valuation() > y_minus.valuation();
    BranchSeries br;
    br.x = xs;
    br.Y0 = (swap_roots ? y_plus : y_minus).truncated(N);
    br.Y1 = (swap_roots ? y_minus : y_plus).truncated(N);
    return br;
}

Series gessel_invariant_residual(const BranchSeries& br) {
    auto eval_i = [](const Series& yb) {
        // (1+y)(1+1/y) = 2 + y + 1/y, then I = 1/(tW) + tW
        Series w = Series(Rat(2)) + yb + inv(yb);
        return inv(w.shifted(1)) + w.shifted(1);
    };
    return eval_i(br.Y0) - eval_i(br.Y1);
}

Series gessel_decoupling_residual(const BranchSeries& br) {
    Series one(Rat(1));
    Series lhs = br.x * (br.Y0 - br.Y1);
    Series rhs = inv((one + br.Y1).shifted(1)) - inv((one + br.Y0).shifted(1));
    return lhs - rhs;
}

Series compose_y(const Series& f, const Series& yv, int ord) {
    Series yt = yv.truncated(ord + 4);
    Series acc = Series::zero(ord);
    // when yv has a pole in t, tail layers of f reach down to low orders,
    // so every known layer contributes; the caller must supply f deep
    // enough that the unknown layers stay above ord
    int hi = f.exact() ? f.lo() + static_cast<int>(f.window().size()) : f.ord();
    for (int k = f.lo(); k < hi; ++k) {
        RatFunc ck = f.coeff(k);
        if (ck.is_zero()) continue;
        if (ck.den().contains(Var::y))
            fail(Err::BadInput, "compose_y needs y-free denominators");
        auto by_deg = ck.num().coeffs_in(Var::y);
        if (by_deg.begin()->first < 0)
            fail(Err::BadInput, "compose_y needs polynomial coefficients");
        // dense Horner walk from the top y-degree down
        Series num = Series(Rat(0));
        for (int e = by_deg.rbegin()->first; e >= 0; --e) {
            num = num * yt;
            auto it = by_deg.find(e);
            if (it != by_deg.end()) num += Series(RatFunc(it->second));
        }
        acc += (num * RatFunc(Poly(1), ck.den())).shifted(k).truncated(ord);
    }
    return acc.truncated(ord);
}

int certify_gessel_invariant(int N) {
    if (N < 5) fail(Err::BadInput, "certify_gessel_invariant needs N >= 5");
    BranchSeries br =
        kernel_root_series(gessel_model(), XSpec::gessel_substitution, N + 4);
    return verified_order(gessel_invariant_residual(br), N, "invariant");
}

int certify_gessel_decoupling(int N) {
    if (N < 5) fail(Err::BadInput, "certify_gessel_decoupling needs N >= 5");
    BranchSeries br =
        kernel_root_series(gessel_model(), XSpec::gessel_substitution, N + 4);
    return verified_order(gessel_decoupling_residual(br), N, "decoupling");
}

CubicIdentityReport certify_cubic_identity(int N) {
    if (N < 8) fail(Err::BadInput, "certify_cubic_identity needs N >= 8");
    StepModel m = gessel_model();
    int W = N + 4;
    Series S = boundary_s_series(m, W + 1).truncated(W);

    Poly y = Poly::var(Var::y);
    Poly one(1);
    RatFunc inv_1y(one, one + y);
    Series S0 = S.map_coeffs([&](const RatFunc& c) { return c.subst(Var::y, RatFunc(0)); });
    auto at_minus1 = [&](const RatFunc& c, int order) {
        RatFunc g = c;
        for (int i = 0; i < order; ++i) g = g.derivative(Var::y);
        return g.subst(Var::y, RatFunc(-1));
    };
    Series Sp = S.map_coeffs([&](const RatFunc& c) { return at_minus1(c, 1); });
    Series Spp = S.map_coeffs([&](const RatFunc& c) { return at_minus1(c, 2); });

    Series J = S + Series::mono(-1, inv_1y);
    Series J0 = S0 + Series::mono(-1, RatFunc(1));
    Series I = Series::mono(-1, RatFunc(y, (one + y).pow(2))) +
               Series::mono(1, RatFunc((one + y).pow(2), y));

    CubicIdentityReport rep;
    rep.a = Series::mono(1, RatFunc(-1));
    rep.b = Series(Rat(2)) + S0.shifted(1);
    rep.c = -S0 + Sp * RatFunc(2) - Series::mono(-1, RatFunc(1));
    rep.d = S0 * Sp * RatFunc(-2) + Sp.shifted(-1) * RatFunc(-3) + Spp.shifted(-1);

    Series j2 = J * J;
    Series rhs = rep.a * (j2 * J) + rep.b * j2 + rep.c * J + rep.d;
    Series residual = (J - J0) * I - rhs;
    if (residual.is_zero()) {
        rep.ok = true;
        rep.residual_order = residual.ord();
    } else {
        rep.residual_order = residual.valuation();
        rep.ok = rep.residual_order >= N;
    }
    return rep;
}

Series z_series(int N) {
    if (N < 2) fail(Err::BadInput, "z_series needs N >= 2");
    Series t2 = Series::mono(2, RatFunc(1));
    Series z = Series(Rat(1)).truncated(N);
    for (int k = 0; k <= N; k += 2) {
        Series z2 = z * z;
        Series rhs =
            Series(Rat(1)) + (t2 * z2.pow(3) * RatFunc(256)) / (z2 + Series(Rat(3))).pow(3);
        z = series_sqrt(rhs.truncated(N));
    }
    return z;
}

}
