#include "qwalk/enumeration.hpp"

#include <algorithm>

namespace qwalk {

namespace {

const Poly& zero_poly() {
    static const Poly z;
    return z;
}

// drop all terms of t-degree above n
Poly t_truncate(const Poly& p, int n) {
    Poly r;
    for (const auto& [e, c] : p.terms())
        if (e[static_cast<int>(Var::t)] <= n) r.add_term(e, c);
    return r;
}

}

const Poly& CountTable::at(int i, int j, int n) const {
    if (n < 0 || n > n_max || i < 0 || j < 0 || i >= side || j >= side)
        return zero_poly();
    return counts[(static_cast<size_t>(n) * side + i) * side + j];
}

CountTable count_walks(const StepModel& m, int n_max, std::pair<int, int> start) {
    if (n_max < 0) fail(Err::BadInput, "count_walks: negative length");
    if (start.first < 0 || start.second < 0)
        fail(Err::BadInput, "count_walks: start outside the quarter plane");
    CountTable tab;
    tab.n_max = n_max;
    tab.side = n_max + std::max(start.first, start.second) + 1;
    tab.start = start;
    size_t layer = static_cast<size_t>(tab.side) * tab.side;
    tab.counts.assign(layer * (n_max + 1), Poly());
    tab.counts[static_cast<size_t>(start.first) * tab.side + start.second] = Poly(1);
    for (int n = 0; n < n_max; ++n) {
        const Poly* cur = &tab.counts[layer * n];
        Poly* nxt = &tab.counts[layer * (n + 1)];
        for (int i = 0; i < tab.side; ++i)
            for (int j = 0; j < tab.side; ++j) {
                const Poly& q = cur[static_cast<size_t>(i) * tab.side + j];
                if (q.is_zero()) continue;
                for (const auto& [st, w] : m.steps) {
                    int ni = i + st.first, nj = j + st.second;
                    if (ni < 0 || nj < 0 || ni >= tab.side || nj >= tab.side) continue;
                    nxt[static_cast<size_t>(ni) * tab.side + nj] += w * q;
                }
            }
    }
    return tab;
}

QSeries q_series(const StepModel& m, int N) {
    CountTable tab = count_walks(m, N);
    QSeries qs;
    qs.N = N;
    qs.coeff.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        Poly& p = qs.coeff[n];
        for (int i = 0; i <= n && i < tab.side; ++i)
            for (int j = 0; j <= n && j < tab.side; ++j) {
                const Poly& q = tab.at(i, j, n);
                if (q.is_zero()) continue;
                Exps e{};
                e[static_cast<int>(Var::x)] = static_cast<int16_t>(i);
                e[static_cast<int>(Var::y)] = static_cast<int16_t>(j);
                p += Poly::mono(e, 1) * q;
            }
    }
    return qs;
}

namespace {

// series in t whose coefficients are the qs coefficients with v set to zero
Series section_series(const QSeries& qs, Var v) {
    std::vector<RatFunc> w;
    w.reserve(qs.coeff.size());
    for (const Poly& p : qs.coeff) w.emplace_back(p.coeff_of(v, 0));
    return Series(0, qs.N + 1, std::move(w));
}

}

Series boundary_r(const StepModel& m, const QSeries& qs) {
    Kernel ker = build_kernel(m);
    Series kx0 = series_of_poly(ker.c, Var::t, qs.N + 1);
    return (kx0 * section_series(qs, Var::y)).truncated(qs.N + 1);
}

Series boundary_s(const StepModel& m, const QSeries& qs) {
    Kernel ker = build_kernel(m);
    Series k0y = series_of_poly(ker.ct, Var::t, qs.N + 1);
    return (k0y * section_series(qs, Var::x)).truncated(qs.N + 1);
}

FunctionalEquationReport check_functional_equation(const StepModel& m, int N) {
    if (N < 0) fail(Err::BadInput, "check_functional_equation: negative order");
    Kernel ker = build_kernel(m);
    QSeries qs = q_series(m, N);
    Poly Q;
    for (int n = 0; n <= N; ++n)
        Q += Poly::var(Var::t, n) * qs.coeff[n];
    Poly R = ker.c * Q.subst(Var::y, Poly(0));
    Poly S = ker.ct * Q.subst(Var::x, Poly(0));
    Poly R0 = R.subst(Var::x, Poly(0));
    Poly S0 = S.subst(Var::y, Poly(0));
    if (t_truncate(R0 - S0, N) != Poly())
        fail(Err::Internal, "boundary sections disagree at the origin");
    FunctionalEquationReport rep;
    Poly xy = Poly::var(Var::x) * Poly::var(Var::y);
    rep.residual = t_truncate(ker.K * Q - R - S + R0 + xy, N);
    rep.ok = rep.residual.is_zero();
    return rep;
}

Rat gessel_closed_form(int n) {
    if (n < 0) fail(Err::BadInput, "gessel_closed_form: negative index");
    unsigned k = static_cast<unsigned>(n);
    Rat num = rat_pow(Rat(16), k) * pochhammer(rat(1, 2), k) * pochhammer(rat(5, 6), k);
    Rat den = pochhammer(Rat(2), k) * pochhammer(rat(5, 3), k);
    return num / den;
}

}
