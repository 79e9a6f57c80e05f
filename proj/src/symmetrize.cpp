#include "qwalk/symmetrize.hpp"

#include <algorithm>
#include <vector>

namespace qwalk {

namespace {

// s_ij = Y0^i Y1^j + Y0^j Y1^i = e2^min(i,j) * p_|i-j|, with p the power sums
struct SymTables {
    std::vector<RatFunc> p;
    std::vector<RatFunc> e2pow;

    SymTables(const RatFunc& e1, const RatFunc& e2, int maxdeg) {
        p.resize(static_cast<size_t>(maxdeg) + 1);
        e2pow.resize(static_cast<size_t>(maxdeg) + 1);
        p[0] = RatFunc(2);
        if (maxdeg >= 1) p[1] = e1;
        for (int k = 2; k <= maxdeg; ++k)
            p[static_cast<size_t>(k)] = e1 * p[static_cast<size_t>(k - 1)] - e2 * p[static_cast<size_t>(k - 2)];
        e2pow[0] = RatFunc(1);
        for (int k = 1; k <= maxdeg; ++k)
            e2pow[static_cast<size_t>(k)] = e2pow[static_cast<size_t>(k - 1)] * e2;
    }

    RatFunc s(int i, int j) const {
        int m = i < j ? i : j;
        int d = i < j ? j - i : i - j;
        return e2pow[static_cast<size_t>(m)] * p[static_cast<size_t>(d)];
    }
};

// P(Y0)Q(Y1) + P(Y1)Q(Y0)
RatFunc mixed(const std::map<int, Poly>& pc, const std::map<int, Poly>& qc, const SymTables& tab) {
    RatFunc acc;
    for (const auto& [i, pi] : pc)
        for (const auto& [j, qj] : qc)
            acc += RatFunc(pi * qj) * tab.s(i, j);
    return acc;
}

}

SymPair symmetrize(const RatFunc& h, const RatFunc& e1, const RatFunc& e2) {
    if (e1.num().contains(Var::y) || e1.den().contains(Var::y) ||
        e2.num().contains(Var::y) || e2.den().contains(Var::y))
        fail(Err::BadInput, "root symmetric functions must not involve y");
    auto pc = h.num().coeffs_in(Var::y);
    auto qc = h.den().coeffs_in(Var::y);
    int maxdeg = 0;
    for (const auto& [i, c] : pc) maxdeg = std::max(maxdeg, i);
    for (const auto& [j, c] : qc) maxdeg = std::max(maxdeg, j);
    SymTables tab(e1, e2, maxdeg);

    RatFunc prod_q = mixed(qc, qc, tab) * RatFunc(Rat(1, 2));
    if (prod_q.is_zero())
        fail(Err::BranchPole, "denominator of h vanishes at a branch of the quadratic");
    RatFunc mixed_pq = mixed(pc, qc, tab);
    RatFunc prod_p = mixed(pc, pc, tab) * RatFunc(Rat(1, 2));
    return {mixed_pq / prod_q, prod_p / prod_q};
}

}
