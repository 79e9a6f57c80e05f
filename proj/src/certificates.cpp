#include "qwalk/certificates.hpp"

#include <sstream>

#include "qwalk/parse.hpp"
#include "qwalk/symmetrize.hpp"

namespace qwalk {

namespace {

bool contains_var(const RatFunc& f, Var v) {
    return f.num().contains(v) || f.den().contains(v);
}

RatFunc swap_xy(const RatFunc& f) {
    return RatFunc(f.num().swap_vars(Var::x, Var::y), f.den().swap_vars(Var::x, Var::y));
}

RatFunc invert_var(const RatFunc& f, Var v) {
    return f.subst(v, RatFunc(Poly(1), Poly::var(v)));
}

// the denominators must not share a component with the kernel curve
void check_pole_coprimality(const Kernel& ker, const RatFunc& fx, const RatFunc& fy) {
    if (fx.den().contains(Var::x) && resultant(ker.K, fx.den(), Var::x).is_zero())
        fail(Err::BranchPole, "denominator in x shares a factor with the kernel");
    if (fy.den().contains(Var::y) && resultant(ker.K, fy.den(), Var::y).is_zero())
        fail(Err::BranchPole, "denominator in y shares a factor with the kernel");
}

// reduce modulo the kernel viewed as a quadratic in y; the result is linear
// in y, and vanishes identically iff the input vanishes on both branches
Poly reduce_mod_kernel(Poly n, const Kernel& ker) {
    if (ker.d.is_zero()) fail(Err::DegenerateKernel, "kernel has a double root in y");
    while (n.degree(Var::y) >= 2) {
        int m = n.degree(Var::y);
        Poly lead = n.coeff_of(Var::y, m);
        n = n * ker.a - lead * Poly::var(Var::y, m - 2) * ker.K;
    }
    return n;
}

void validate_invariant_pair(const InvariantPair& p) {
    if (!contains_var(p.I1, Var::x) || contains_var(p.I1, Var::y) ||
        !contains_var(p.I2, Var::y) || contains_var(p.I2, Var::x) ||
        contains_var(p.I1, Var::u) || contains_var(p.I2, Var::u))
        fail(Err::BadInput, "invariant pair must be (I1 in x, I2 in y), nonconstant");
}

void validate_decoupling_pair(const DecouplingPair& p) {
    if (contains_var(p.F, Var::y) || contains_var(p.G, Var::x) ||
        contains_var(p.F, Var::u) || contains_var(p.G, Var::u))
        fail(Err::BadInput, "decoupling pair must be (F in x, G in y)");
}

void branch_elementaries(const Kernel& ker, RatFunc& e1, RatFunc& e2) {
    e1 = RatFunc(-ker.b, ker.a);
    e2 = RatFunc(ker.c, ker.a);
}

}

bool verify_invariant(const StepModel& m, const InvariantPair& p) {
    validate_invariant_pair(p);
    Kernel ker = build_kernel(m);
    check_pole_coprimality(ker, p.I1, p.I2);
    RatFunc diff = p.I1 - p.I2;
    return reduce_mod_kernel(diff.num(), ker).is_zero();
}

bool verify_invariant_via_discriminant(const StepModel& m, const InvariantPair& p) {
    validate_invariant_pair(p);
    Kernel ker = build_kernel(m);
    check_pole_coprimality(ker, p.I1, p.I2);
    RatFunc e1, e2;
    branch_elementaries(ker, e1, e2);
    SymPair s = symmetrize(p.I2, e1, e2);
    RatFunc disc = s.sum * s.sum - RatFunc(4) * s.product;
    return disc.is_zero() && RatFunc(2) * p.I1 == s.sum;
}

RatFunc induced_x_invariant(const StepModel& m, const RatFunc& I2) {
    if (!contains_var(I2, Var::y) || contains_var(I2, Var::x))
        fail(Err::BadInput, "I2 must be a nonconstant function of y");
    Kernel ker = build_kernel(m);
    check_pole_coprimality(ker, RatFunc(1), I2);
    RatFunc e1, e2;
    branch_elementaries(ker, e1, e2);
    SymPair s = symmetrize(I2, e1, e2);
    if (!(s.sum * s.sum - RatFunc(4) * s.product).is_zero())
        fail(Err::NotAnInvariant, "I2 separates the kernel branches");
    return s.sum * RatFunc(rat(1, 2));
}

bool verify_decoupling(const StepModel& m, const DecouplingPair& p) {
    validate_decoupling_pair(p);
    Kernel ker = build_kernel(m);
    check_pole_coprimality(ker, p.F, p.G);
    RatFunc xy(Poly::var(Var::x) * Poly::var(Var::y));
    RatFunc diff = xy - p.F - p.G;
    return reduce_mod_kernel(diff.num(), ker).is_zero();
}

std::optional<RatFunc> F_from_G(const StepModel& m, const RatFunc& G) {
    if (contains_var(G, Var::x) || contains_var(G, Var::u))
        fail(Err::BadInput, "G must be a function of y");
    Kernel ker = build_kernel(m);
    RatFunc e1, e2;
    branch_elementaries(ker, e1, e2);
    SymPair s = symmetrize(G, e1, e2);
    RatFunc F = (RatFunc(Poly::var(Var::x)) * e1 - s.sum) * RatFunc(rat(1, 2));
    DecouplingPair p{F, G};
    if (!verify_decoupling(m, p)) return std::nullopt;
    return F;
}

namespace {

// remove duplicates by exact equality and multiply
Poly common_denominator(const std::vector<RatFunc>& fs) {
    std::vector<Poly> dens;
    for (const RatFunc& f : fs) {
        bool seen = false;
        for (const Poly& d : dens)
            if (d == f.den()) { seen = true; break; }
        if (!seen) dens.push_back(f.den());
    }
    Poly prod(1);
    for (const Poly& d : dens) prod = prod * d;
    return prod;
}

struct AffineSolution {
    std::vector<RatFunc> particular;
    std::vector<std::vector<RatFunc>> nullspace;
};

// full solution set of A x = rhs: a particular solution with free variables
// at zero plus a basis of the homogeneous solutions
std::optional<AffineSolution> linsolve_affine(std::vector<std::vector<RatFunc>> a,
                                              std::vector<RatFunc> rhs) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = SIZE_MAX, best = SIZE_MAX;
        for (size_t r = rank; r < rows; ++r) {
            if (a[r][col].is_zero()) continue;
            size_t sz = a[r][col].num().n_terms() + a[r][col].den().n_terms();
            if (sz < best) { best = sz; sel = r; }
        }
        if (sel == SIZE_MAX) continue;
        std::swap(a[sel], a[rank]);
        std::swap(rhs[sel], rhs[rank]);
        RatFunc inv = RatFunc(1) / a[rank][col];
        for (size_t c = col; c < cols; ++c) a[rank][c] *= inv;
        rhs[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            RatFunc f = a[r][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
            rhs[r] -= f * rhs[rank];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;
    AffineSolution out;
    out.particular.assign(cols, RatFunc(0));
    for (size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col] != SIZE_MAX) out.particular[col] = rhs[pivot_of_col[col]];
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] != SIZE_MAX) continue;
        std::vector<RatFunc> v(cols, RatFunc(0));
        v[free_col] = RatFunc(1);
        for (size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] != SIZE_MAX) v[col] = -a[pivot_of_col[col]][free_col];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

size_t support_size(const std::vector<RatFunc>& v) {
    size_t s = 0;
    for (const RatFunc& c : v)
        if (!c.is_zero()) ++s;
    return s;
}

// the solution is only determined up to homogeneous directions (any
// y-invariant lying inside the ansatz); pick the sparsest representative so
// the output does not depend on pivoting order
std::vector<RatFunc> canonical_solution(const AffineSolution& s) {
    std::vector<RatFunc> best = s.particular;
    if (s.nullspace.size() == 1) {
        const std::vector<RatFunc>& v = s.nullspace[0];
        size_t best_sz = support_size(best);
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero() || s.particular[i].is_zero()) continue;
            RatFunc alpha = -s.particular[i] / v[i];
            std::vector<RatFunc> cand = s.particular;
            for (size_t j = 0; j < v.size(); ++j) cand[j] += alpha * v[j];
            size_t sz = support_size(cand);
            if (sz < best_sz) { best_sz = sz; best = std::move(cand); }
        }
    } else if (s.nullspace.size() > 1) {
        // reduce coordinates greedily along each direction
        for (const std::vector<RatFunc>& v : s.nullspace) {
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i].is_zero()) continue;
                RatFunc alpha = -best[i] / v[i];
                for (size_t j = 0; j < v.size(); ++j) best[j] += alpha * v[j];
                break;
            }
        }
    }
    return best;
}

}

std::optional<DecouplingPair> search_decoupling(const StepModel& m, const Ansatz& a) {
    if (a.lo > a.hi) fail(Err::BadInput, "ansatz range is empty");
    for (const auto& [p, mult] : a.poles)
        if (mult < 1) fail(Err::BadInput, "pole multiplicity must be positive");
    Kernel ker = build_kernel(m);
    if (ker.d.is_zero()) fail(Err::DegenerateKernel, "kernel has a double root in y");
    RatFunc e1, e2;
    branch_elementaries(ker, e1, e2);

    // basis elements g(y) and their divided differences (g(Y0)-g(Y1))/(Y0-Y1),
    // which are rational in x since they are symmetric under branch exchange
    std::vector<RatFunc> basis_g, basis_d;

    // u_k = (Y0^k - Y1^k)/(Y0 - Y1) by the two-term recurrence
    int kmax = std::max(a.hi, -a.lo);
    std::vector<RatFunc> uk(std::max(kmax + 1, 2));
    uk[0] = RatFunc(0);
    uk[1] = RatFunc(1);
    for (int k = 2; k <= kmax; ++k) uk[k] = e1 * uk[k - 1] - e2 * uk[k - 2];
    for (int k = a.lo; k <= a.hi; ++k) {
        if (k == 0) continue;
        if (k > 0) {
            basis_g.emplace_back(Poly::var(Var::y, k));
            basis_d.push_back(uk[k]);
        } else {
            if (e2.is_zero()) continue;
            basis_g.emplace_back(Poly(1), Poly::var(Var::y, -k));
            basis_d.push_back(-uk[-k] / e2.pow(-k));
        }
    }
    for (const auto& [p, mult] : a.poles) {
        Poly kp = ker.K.subst(Var::y, Poly(p));
        if (kp.is_zero()) continue;
        // shift both branches by p: elementaries of (Y0-p, Y1-p)
        RatFunc se1 = e1 - RatFunc(2 * p);
        RatFunc se2(kp, ker.a);
        RatFunc sv_prev(0), sv(1);
        Poly lin = Poly::var(Var::y) - Poly(p);
        for (int r = 1; r <= mult; ++r) {
            basis_g.emplace_back(Poly(1), lin.pow(static_cast<unsigned>(r)));
            basis_d.push_back(-sv / se2.pow(r));
            RatFunc nxt = se1 * sv - se2 * sv_prev;
            sv_prev = sv;
            sv = nxt;
        }
    }
    if (basis_g.empty()) return std::nullopt;

    // solve sum c_j d_j(x) = x over the coefficient field
    std::vector<RatFunc> all = basis_d;
    all.emplace_back(Poly::var(Var::x));
    Poly delta = common_denominator(all);
    std::vector<Poly> cleared;
    int max_deg = 0;
    for (const RatFunc& f : all) {
        RatFunc c = f * RatFunc(delta);
        if (!c.is_polynomial()) fail(Err::Internal, "denominator clearing failed");
        cleared.push_back(c.as_polynomial());
        max_deg = std::max(max_deg, cleared.back().degree(Var::x));
    }
    size_t ncols = basis_g.size();
    std::vector<std::vector<RatFunc>> A(max_deg + 1, std::vector<RatFunc>(ncols));
    std::vector<RatFunc> rhs(max_deg + 1);
    for (int i = 0; i <= max_deg; ++i) {
        for (size_t j = 0; j < ncols; ++j) A[i][j] = RatFunc(cleared[j].coeff_of(Var::x, i));
        rhs[i] = RatFunc(cleared[ncols].coeff_of(Var::x, i));
    }
    auto sol = linsolve_affine(A, rhs);
    if (!sol) return std::nullopt;
    std::vector<RatFunc> coeffs = canonical_solution(*sol);

    RatFunc G(0);
    for (size_t j = 0; j < ncols; ++j)
        if (!coeffs[j].is_zero()) G += coeffs[j] * basis_g[j];
    std::optional<RatFunc> F = F_from_G(m, G);
    if (!F) return std::nullopt;
    return DecouplingPair{*F, G};
}

InvariantPair reflect_certificates(const InvariantPair& p, ReflectKind kind) {
    if (kind == ReflectKind::diagonal)
        return InvariantPair{swap_xy(p.I2), swap_xy(p.I1)};
    return InvariantPair{invert_var(p.I1, Var::x), p.I2};
}

namespace {

RatFunc rf(const std::string& s) { return parse_ratfunc(s); }

std::map<std::string, CertEntry> build_table() {
    std::map<std::string, CertEntry> tab;

    // invariants for the seven finite-group unweighted models
    tab["table3-1"].invariant = InvariantPair{rf("t/x^2 - 1/x - t*x"), rf("t*y^2 - y - t/y")};
    tab["kreweras"].invariant = InvariantPair{rf("t/x^2 - 1/x - t*x"), rf("t/y^2 - 1/y - t*y")};
    tab["reversed-kreweras"].invariant =
        InvariantPair{rf("t*x^2 - x - t/x"), rf("t*y^2 - y - t/y")};
    // this model is the vertical reflection of the six-step model below, so
    // its I1 is that model's I1 with x replaced by 1/x
    tab["table3-4"].invariant = InvariantPair{rf("t*x - t/x - (1 + 2*t)/(1 + 1/x)"),
                                              rf("t/y - t*y - (1 + 2*t)/(1 + y)")};
    tab["double-kreweras"].invariant = InvariantPair{rf("t/x - t*x - (1 + 2*t)/(1 + x)"),
                                                     rf("t/y - t*y - (1 + 2*t)/(1 + y)")};
    // these two models share the x-invariant x + 1/x - t*x^2 - t/x^2; its
    // induced partner in y (the same for both kernels) completes the pair
    tab["table3-6"].invariant = InvariantPair{rf("x + 1/x - t*x^2 - t/x^2"),
                                              rf("y/(t*(1 + y)^2) + t*(y + 1/y)")};
    tab["gessel"].invariant = InvariantPair{rf("x + 1/x - t*x^2 - t/x^2"),
                                            rf("y/(t*(1 + y)^2) + t*(y + 1/y)")};

    // weighted invariants; the third is the half-turn rotation of the second
    // and the fourth its vertical reflection, transported by reflection
    // the classical x-side function t/x^2 - 1/x - x(1 + lam t) is an
    // x-invariant, but the partner of this I2 is its image under
    // J -> -t J - t^2, which is what a matched pair requires
    tab["weighted-1"].invariant =
        InvariantPair{rf("-t^2/x^2 + t/x + (1 + lam*t)*t*x - t^2"),
                      rf("t^2*y + (1 + lam*t)/(y + 1) - ((1 + lam*t)/(y + 1))^2")};
    InvariantPair w2{rf("t^2/x^2 - (1 + 2*t)*t/x - (3*t + 1)*t*x"
                        " - (1 + 3*t)*(4*t + 1)/(x + 1) + (3*t + 1)^2/(x + 1)^2"),
                     rf("t^2/y^2 - (1 + 2*t)*t/y - (3*t + 1)*t*y"
                        " - (1 + 3*t)*(4*t + 1)/(y + 1) + (3*t + 1)^2/(y + 1)^2")};
    tab["weighted-2"].invariant = w2;
    InvariantPair rot = reflect_certificates(
        reflect_certificates(
            reflect_certificates(reflect_certificates(w2, ReflectKind::diagonal),
                                 ReflectKind::vertical),
            ReflectKind::diagonal),
        ReflectKind::vertical);
    tab["weighted-3"].invariant = rot;
    tab["weighted-4"].invariant = reflect_certificates(w2, ReflectKind::vertical);

    // decoupling functions for the models with a finite group
    tab["kreweras"].decoupling = DecouplingPair{rf("1/t - 1/x"), rf("-1/y")};
    tab["reversed-kreweras"].decoupling = DecouplingPair{RatFunc(0), rf("-1/y")};
    tab["double-kreweras"].decoupling = DecouplingPair{RatFunc(0), rf("-1/y")};
    tab["gessel"].decoupling = DecouplingPair{rf("1/t - 1/x"), rf("-1/(t*(1 + y))")};
    tab["weighted-1"].decoupling = DecouplingPair{RatFunc(0), rf("-(1 + lam*t)/(t*(1 + y))")};
    tab["weighted-2"].decoupling =
        DecouplingPair{RatFunc(0), rf("-y + 1/y - (1 + 3*t)/(t*(1 + y))")};
    tab["weighted-3"].decoupling =
        DecouplingPair{RatFunc(0), rf("-y^2 + y*(1 + 1/t) + (3 + 1/t)/y")};
    tab["weighted-4"].decoupling = DecouplingPair{RatFunc(0), rf("-y - 1/y")};

    // decoupling functions for the nine infinite-group models
    tab["#1"].decoupling = DecouplingPair{RatFunc(0), rf("-1/y")};
    tab["#2"].decoupling = DecouplingPair{RatFunc(0), rf("-y - 1/y")};
    tab["#3"].decoupling = DecouplingPair{RatFunc(0), rf("-y - 1/y")};
    tab["#4"].decoupling = DecouplingPair{RatFunc(0), rf("-y^2 + y/t + 1/y")};
    tab["#5"].decoupling = DecouplingPair{RatFunc(0), rf("-(1 + t)/(t*(y + 1)) - y")};
    tab["#6"].decoupling = DecouplingPair{RatFunc(0), rf("-1/y")};
    tab["#7"].decoupling = DecouplingPair{RatFunc(0), rf("-y - 1/y")};
    tab["#8"].decoupling = DecouplingPair{RatFunc(0), rf("-1/y - y")};
    tab["#9"].decoupling =
        DecouplingPair{RatFunc(0), rf("-1/y^2 + 1/(t*y) + (t + 1)*y/t - y^2")};

    return tab;
}

}

const std::map<std::string, CertEntry>& builtin_certificate_table() {
    static const std::map<std::string, CertEntry> tab = [] {
        std::map<std::string, CertEntry> t = build_table();
        // generic invariants for the vertically symmetric models
        std::vector<std::string> vsym_names;
        for (const StepModel& m : catalog())
            if (m.name.rfind("vsym-", 0) == 0 || m.name == "simple") vsym_names.push_back(m.name);
        for (const std::string& name : vsym_names) {
            Kernel ker = build_kernel(*catalog_lookup(name));
            RatFunc I1 = rf("x + 1/x");
            RatFunc I2 = RatFunc(-ker.bt, ker.at);
            t[name].invariant = InvariantPair{I1, I2};
        }
        // a failed certificate is a build defect, not a user error
        for (auto& [name, e] : t) {
            StepModel m = *catalog_lookup(name);
            if (e.invariant && !verify_invariant(m, *e.invariant))
                fail(Err::Internal, "builtin invariant fails for " + name);
            if (e.decoupling) {
                // entries stored with F = 0 take the induced F
                if (e.decoupling->F.is_zero()) {
                    std::optional<RatFunc> F = F_from_G(m, e.decoupling->G);
                    if (!F) fail(Err::Internal, "builtin G does not decouple for " + name);
                    e.decoupling->F = *F;
                } else if (!verify_decoupling(m, *e.decoupling)) {
                    fail(Err::Internal, "builtin decoupling fails for " + name);
                }
            }
        }
        return t;
    }();
    return tab;
}

CertificateFile parse_certificate_file(const std::string& text) {
    CertificateFile out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        size_t sp = line.find_first_of(" \t", b);
        if (sp == std::string::npos) fail(Err::BadInput, "certificate line has no value: " + line);
        std::string key = line.substr(b, sp - b);
        std::string val = line.substr(sp + 1);
        size_t vb = val.find_first_not_of(" \t");
        size_t ve = val.find_last_not_of(" \t\r");
        if (vb == std::string::npos) fail(Err::BadInput, "certificate line has no value: " + line);
        val = val.substr(vb, ve - vb + 1);
        if (key == "model") out.model = val;
        else if (key == "I1") out.I1 = parse_ratfunc(val);
        else if (key == "I2") out.I2 = parse_ratfunc(val);
        else if (key == "F") out.F = parse_ratfunc(val);
        else if (key == "G") out.G = parse_ratfunc(val);
        else fail(Err::BadInput, "unknown certificate field: " + key);
    }
    if (out.model.empty()) fail(Err::BadInput, "certificate without a model line");
    return out;
}

}
