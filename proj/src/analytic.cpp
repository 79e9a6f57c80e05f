#include "qwalk/analytic.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <vector>

#include "qwalk/certificates.hpp"
#include "qwalk/error.hpp"
#include "qwalk/numerics.hpp"
#include "qwalk/ratfunc.hpp"

namespace qwalk {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::pow;
using boost::multiprecision::sin;
using boost::multiprecision::sqrt;

real_t tol10(int slack) {
    return pow(real_t(10), slack - current_digits());
}

// dense coefficient vector of p in the main variable with t substituted;
// any other variable present is an error
std::vector<Rat> dense_at_t(const Poly& p, Var main, const Rat& tval) {
    std::vector<Rat> out;
    for (const auto& [e, coef] : p.terms()) {
        Rat c = coef;
        for (int i = 0; i < NVARS; ++i) {
            if (e[i] == 0) continue;
            Var v = static_cast<Var>(i);
            if (v == Var::t) {
                for (int k = 0; k < e[i]; ++k) c *= tval;
            } else if (v != main) {
                fail(Err::BadInput, "kernel coefficient contains an unexpected variable");
            }
        }
        int deg = e[static_cast<int>(main)];
        if (static_cast<int>(out.size()) <= deg) out.resize(deg + 1, Rat(0));
        out[static_cast<size_t>(deg)] += c;
    }
    while (!out.empty() && out.back() == Rat(0)) out.pop_back();
    return out;
}

std::vector<HPComplex> to_complex_coeffs(const std::vector<Rat>& c) {
    std::vector<HPComplex> v;
    v.reserve(c.size());
    for (const auto& r : c) v.emplace_back(to_real(r));
    return v;
}

std::vector<real_t> to_real_coeffs(const std::vector<Rat>& c) {
    std::vector<real_t> v;
    v.reserve(c.size());
    for (const auto& r : c) v.push_back(to_real(r));
    return v;
}

real_t eval_real(const std::vector<real_t>& c, const real_t& x) {
    real_t acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

HPComplex eval_cx(const std::vector<Rat>& c, const HPComplex& x) {
    HPComplex acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + HPComplex(to_real(c[i]));
    return acc;
}

std::vector<Rat> dense_derivative(const std::vector<Rat>& c) {
    std::vector<Rat> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(Rat(static_cast<long>(i)) * c[i]);
    return d;
}

struct SidePoints {
    std::vector<real_t> r;  // x1..x3 or x1..x4 sorted per the classification
    bool infinite = false;
};

void require_negative_samples(const std::vector<real_t>& d, const real_t& lo,
                              const real_t& hi, const char* where) {
    for (int k = 1; k <= 7; ++k) {
        real_t x = lo + (hi - lo) * k / 8;
        if (!(eval_real(d, x) < 0))
            fail(Err::ClassificationFailed, std::string("discriminant not negative on ") + where);
    }
}

SidePoints classify_discriminant(const std::vector<Rat>& dr, const char* side) {
    int deg = static_cast<int>(dr.size()) - 1;
    if (deg < 3 || deg > 4)
        fail(Err::ClassificationFailed,
             std::string("discriminant in ") + side + " has unusable degree");
    auto roots = poly_roots(to_complex_coeffs(dr));
    real_t rtol = tol10(12);
    std::vector<real_t> xs;
    for (const auto& z : roots) {
        if (abs(z.im) > rtol * (1 + abs(z.re)))
            fail(Err::ClassificationFailed,
                 std::string("complex branch point on the ") + side + " side");
        xs.push_back(z.re);
    }
    std::sort(xs.begin(), xs.end(), [](const real_t& a, const real_t& b) {
        return abs(a) < abs(b);
    });
    real_t sep = tol10(current_digits() / 2);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (abs(xs[i] - xs[j]) < sep)
                fail(Err::ClassificationFailed,
                     std::string("coalescing branch points on the ") + side + " side");
    // in-disk pair: larger modulus must be the positive one
    if (!(abs(xs[1]) < 1) || !(abs(xs[2]) > 1))
        fail(Err::ClassificationFailed,
             std::string("unit-circle split failed on the ") + side + " side");
    real_t x1 = xs[0], x2 = xs[1];
    if (abs(abs(x1) - abs(x2)) < rtol * (1 + abs(x2)) && x1 > x2) std::swap(x1, x2);
    if (!(x2 > 0))
        fail(Err::ClassificationFailed,
             std::string("second branch point not positive on the ") + side + " side");
    if (abs(x1) > abs(x2) * (1 + rtol))
        fail(Err::ClassificationFailed, std::string("modulus order violated on the ") + side);
    SidePoints sp;
    sp.infinite = (deg == 3);
    auto dnum = to_real_coeffs(dr);
    require_negative_samples(dnum, x1, x2, "the inner cut");
    if (sp.infinite) {
        real_t x3 = xs[2];
        if (!(x3 > 0))
            fail(Err::ClassificationFailed,
                 std::string("third branch point not positive on the ") + side + " side");
        real_t base = 1 + abs(x3);
        for (int k = 0; k < 4; ++k) {
            real_t x = x3 + base * pow(real_t(10), k);
            if (!(eval_real(dnum, x) < 0))
                fail(Err::ClassificationFailed, "discriminant not negative beyond x3");
        }
        sp.r = {x1, x2, x3};
        return sp;
    }
    real_t x3 = xs[2], x4 = xs[3];
    if (x3 > 0 && x4 > 0) {
        if (x3 > x4) std::swap(x3, x4);
    } else {
        if (!(x3 > 0)) std::swap(x3, x4);
        if (!(x3 > 0))
            fail(Err::ClassificationFailed,
                 std::string("no positive outer branch point on the ") + side + " side");
    }
    if (x4 > 0) {
        require_negative_samples(dnum, x3, x4, "the outer cut");
    } else {
        real_t base = 1 + abs(x3) + abs(x4);
        for (int k = 0; k < 3; ++k) {
            real_t step = base * pow(real_t(10), k);
            if (!(eval_real(dnum, x3 + step) < 0) || !(eval_real(dnum, x4 - step) < 0))
                fail(Err::ClassificationFailed, "discriminant not negative on the split cut");
        }
    }
    sp.r = {x1, x2, x3, x4};
    return sp;
}

Rat weight_sum(const StepModel& m) {
    Rat s(0);
    for (const auto& [st, w] : m.steps) {
        (void)st;
        if (!w.is_constant()) fail(Err::BadInput, "symbolic weights have no numeric range");
        s += w.constant_value();
    }
    return s;
}

// point-in-region test on the sampled curve; chain is y0 forward then the
// conjugate branch backward, closed only in the bounded case
int ray_crossings(const CurveL& cl, const HPComplex& q) {
    std::vector<const HPComplex*> v;
    size_t n = cl.y0.size();
    for (size_t i = 0; i < n; ++i) v.push_back(&cl.y0[i]);
    for (size_t i = n; i-- > 0;) v.push_back(&cl.y1[i]);
    int cross = 0;
    size_t total = v.size();
    size_t start = cl.bounded ? 0 : 1;  // skip the wrap edge when the curve is open
    for (size_t i = start; i < total; ++i) {
        const HPComplex& p = *v[i == 0 ? total - 1 : i - 1];
        const HPComplex& r = *v[i];
        bool pa = p.im > q.im, ra = r.im > q.im;
        if (pa == ra) continue;
        real_t xc = p.re + (q.im - p.im) * (r.re - p.re) / (r.im - p.im);
        if (xc < q.re) ++cross;
    }
    return cross;
}

real_t curve_distance(const CurveL& cl, const HPComplex& q) {
    real_t best = -1;
    size_t n = cl.y0.size();
    auto seg = [&](const HPComplex& p, const HPComplex& r) {
        HPComplex d = r - p;
        real_t L2 = norm(d);
        real_t tpar = 0;
        if (L2 > 0) {
            tpar = ((q.re - p.re) * d.re + (q.im - p.im) * d.im) / L2;
            if (tpar < 0) tpar = 0;
            if (tpar > 1) tpar = 1;
        }
        HPComplex foot = p + d * tpar;
        real_t dist = abs_c(q - foot);
        if (best < 0 || dist < best) best = dist;
    };
    for (size_t i = 1; i < n; ++i) {
        seg(cl.y0[i - 1], cl.y0[i]);
        seg(cl.y1[i - 1], cl.y1[i]);
    }
    return best;
}

}  // namespace

BranchData branch_points(const StepModel& m, const Rat& t, int precision) {
    if (m.has_symbolic_weights()) fail(Err::BadInput, "model has symbolic weights");
    if (is_singular(m)) fail(Err::BadInput, "singular model has no branch data");
    Rat w = weight_sum(m);
    if (!(t > Rat(0)) || !(t < Rat(1) / w))
        fail(Err::TOutOfRange, "t must lie strictly between 0 and 1/(total weight)");
    if (precision < 15) fail(Err::BadInput, "precision below 15 digits");
    // a period integral up to a root of d sees an endpoint offset delta as an
    // error of order sqrt(delta), so roots carry twice the usual guard
    ScopedPrecision sp(precision + hp_guard_digits() + 30);
    Kernel ker = build_kernel(m);
    auto sx = classify_discriminant(dense_at_t(ker.d, Var::x, t), "x");
    auto sy = classify_discriminant(dense_at_t(ker.dt, Var::y, t), "y");
    BranchData bd;
    bd.t = t;
    bd.precision = precision;
    bd.x4_infinite = sx.infinite;
    bd.y4_infinite = sy.infinite;
    for (const auto& r : sx.r) bd.x.emplace_back(r);
    if (sx.infinite) bd.x.emplace_back(0);
    for (const auto& r : sy.r) bd.y.emplace_back(r);
    if (sy.infinite) bd.y.emplace_back(0);
    return bd;
}

BranchContext make_branch_context(const StepModel& m, const Rat& t, int precision) {
    BranchContext ctx;
    ctx.model = m;
    ctx.t = t;
    ctx.precision = precision;
    ctx.branch = branch_points(m, t, precision);
    Kernel ker = build_kernel(m);
    ctx.a = dense_at_t(ker.a, Var::x, t);
    ctx.b = dense_at_t(ker.b, Var::x, t);
    ctx.c = dense_at_t(ker.c, Var::x, t);
    ctx.d = dense_at_t(ker.d, Var::x, t);
    ctx.at = dense_at_t(ker.at, Var::y, t);
    ctx.bt = dense_at_t(ker.bt, Var::y, t);
    ctx.ct = dense_at_t(ker.ct, Var::y, t);
    ctx.dt = dense_at_t(ker.dt, Var::y, t);
    return ctx;
}

std::pair<HPComplex, HPComplex> y_branches(const BranchContext& ctx, const HPComplex& x) {
    ScopedPrecision sp(ctx.precision + hp_guard_digits());
    HPComplex A = eval_cx(ctx.a, x), B = eval_cx(ctx.b, x), C = eval_cx(ctx.c, x);
    real_t scale = abs_c(A) + abs_c(B) + abs_c(C);
    if (abs_c(A) < tol10(10) * scale)
        fail(Err::DegenerateQuadratic, "leading kernel coefficient vanishes at x");
    HPComplex s = sqrt_c(B * B - HPComplex(4) * A * C);
    // align the root with B to avoid cancellation in the larger solution
    if (B.re * s.re + B.im * s.im < 0) s = -s;
    HPComplex q = (B + s) * real_t(-0.5);
    HPComplex r1, r2;
    if (abs_c(q) > 0) {
        r1 = q / A;
        r2 = C / q;
    } else {
        r1 = HPComplex(0);
        r2 = HPComplex(0);
    }
    real_t a1 = abs_c(r1), a2 = abs_c(r2);
    if (abs(a1 - a2) < tol10(12) * (a1 + a2 + 1)) {
        if (r1.im > r2.im) std::swap(r1, r2);  // conjugate pair: lower half first
    } else if (a1 > a2) {
        std::swap(r1, r2);
    }
    return {r1, r2};
}

CurveL curve_L(const BranchContext& ctx, int n_samples) {
    if (n_samples < 8) fail(Err::BadInput, "too few curve samples");
    ScopedPrecision sp(ctx.precision + hp_guard_digits());
    real_t x1 = ctx.branch.x[0].re, x2 = ctx.branch.x[1].re;
    CurveL cl;
    cl.bounded = true;
    real_t edge_tol = tol10(12) * (1 + abs(x1) + abs(x2));
    if (ctx.a.size() > 1) {
        for (const auto& z : poly_roots(to_complex_coeffs(ctx.a))) {
            if (abs(z.im) < edge_tol && z.re > x1 - edge_tol && z.re < x2 + edge_tol)
                cl.bounded = false;
        }
    }
    auto ar = to_real_coeffs(ctx.a);
    real_t pi = hp_pi();
    for (int k = 0; k < n_samples; ++k) {
        real_t u = (1 - cos(pi * k / (n_samples - 1))) / 2;
        real_t x = x1 + (x2 - x1) * u;
        if (!cl.bounded && abs(eval_real(ar, x)) < edge_tol) {
            // nudge off a vanishing leading coefficient at the cut edge
            real_t eps("1e-12");
            u = (k == 0) ? eps : real_t(1) - eps;
            x = x1 + (x2 - x1) * u;
        }
        auto [ylo, yhi] = y_branches(ctx, HPComplex(x));
        // root extraction at the cut endpoints only carries half precision
        real_t ctol = tol10(current_digits() / 2 + 6) * (1 + abs_c(ylo));
        if (abs_c(ylo - conj(yhi)) > ctol)
            fail(Err::ClassificationFailed, "curve samples are not conjugate");
        cl.x.emplace_back(x);
        cl.y0.push_back(ylo);
        cl.y1.push_back(yhi);
    }
    return cl;
}

namespace {

// Gauss-Legendre ladder with recursive bisection; close branch points put
// complex singularities near the contour, which a single panel cannot resolve
real_t gl_bisect(const std::function<real_t(const real_t&)>& f, const real_t& a,
                 const real_t& b, const real_t& tol_abs, int depth) {
    real_t prev = integrate_gl(f, a, b, 48);
    for (int n : {96, 192, 384}) {
        real_t cur = integrate_gl(f, a, b, n);
        if (abs(cur - prev) < tol_abs) return cur;
        prev = cur;
    }
    if (depth >= 40) fail(Err::QuadratureNonConvergent, "bisection ladder exhausted");
    real_t mid = (a + b) / 2;
    return gl_bisect(f, a, mid, tol_abs, depth + 1) + gl_bisect(f, mid, b, tol_abs, depth + 1);
}

// whole-interval absolute tolerance from a coarse estimate; the integrands
// here are positive, so the estimate is a sound magnitude reference
real_t integrate_pos(const std::function<real_t(const real_t&)>& f, const real_t& a,
                     const real_t& b, const real_t& rel_tol) {
    real_t est = abs(integrate_gl(f, a, b, 64));
    return gl_bisect(f, a, b, rel_tol * (est + 1), 0);
}

}  // namespace

Periods periods(const BranchContext& ctx) {
    // evaluating the discriminant near its roots cancels catastrophically,
    // so the integrand noise floor sits well above the working epsilon; the
    // extra guard digits keep that floor far below the requested accuracy
    ScopedPrecision sp(ctx.precision + hp_guard_digits() + 15);
    real_t x1 = ctx.branch.x[0].re, x2 = ctx.branch.x[1].re, x3 = ctx.branch.x[2].re;
    auto d = to_real_coeffs(ctx.d);
    real_t pi = hp_pi();
    real_t half_pi = pi / 2;
    real_t qtol = pow(real_t(10), -(ctx.precision + 10));

    auto cut_integral = [&](const real_t& lo, const real_t& hi, int sgn) {
        std::function<real_t(const real_t&)> f = [&, lo, hi, sgn](const real_t& th) {
            real_t s = sin(th);
            real_t x = lo + (hi - lo) * s * s;
            real_t v = sgn * eval_real(d, x);
            return (hi - lo) * sin(2 * th) / sqrt(v);
        };
        return integrate_pos(f, real_t(0), half_pi, qtol);
    };

    Periods per;
    real_t i1 = cut_integral(x1, x2, -1);
    if (!(i1 > 0)) fail(Err::QuadratureNonConvergent, "first period came out nonpositive");
    per.w1 = HPComplex(real_t(0), i1);
    real_t i2 = cut_integral(x2, x3, 1);
    if (!(i2 > 0)) fail(Err::QuadratureNonConvergent, "second period came out nonpositive");
    per.w2 = HPComplex(i2);

    // third integral runs from the x value over the first y branch point up
    // to x1; that value escapes to -infinity when the leading y coefficient
    // of the x quadratic vanishes there
    real_t y1 = ctx.branch.y[0].re;
    auto atv = to_real_coeffs(ctx.at);
    auto btv = to_real_coeffs(ctx.bt);
    real_t at1 = eval_real(atv, y1);
    real_t ascale = 0;
    for (const auto& cfs : atv) ascale += abs(cfs);
    real_t i3;
    if (abs(at1) < tol10(10) * (ascale + 1)) {
        for (int k = -3; k <= 2; ++k) {
            real_t xs = x1 - pow(real_t(10), k);
            if (!(eval_real(d, xs) > 0))
                fail(Err::ClassificationFailed, "discriminant not positive left of x1");
        }
        std::function<real_t(const real_t&)> f = [&, x1](const real_t& s) {
            real_t u = s / (1 - s);
            real_t x = x1 - u * u;
            return 2 * u / ((1 - s) * (1 - s) * sqrt(eval_real(d, x)));
        };
        i3 = integrate_pos(f, real_t(0), real_t(1), qtol);
    } else {
        real_t L = -eval_real(btv, y1) / (2 * at1);
        if (!(L < x1))
            fail(Err::ClassificationFailed, "X(y1) does not lie left of x1");
        for (int k = 1; k <= 7; ++k) {
            real_t xs = L + (x1 - L) * k / 8;
            if (!(eval_real(d, xs) > 0))
                fail(Err::ClassificationFailed, "discriminant not positive on (X(y1), x1)");
        }
        std::function<real_t(const real_t&)> f = [&, x1, L](const real_t& th) {
            real_t s = sin(th);
            real_t x = x1 - (x1 - L) * s * s;
            return (x1 - L) * sin(2 * th) / sqrt(eval_real(d, x));
        };
        i3 = integrate_pos(f, real_t(0), half_pi, qtol);
    }
    if (!(i3 > 0)) fail(Err::QuadratureNonConvergent, "third period came out nonpositive");
    per.w3 = HPComplex(i3);
    return per;
}

namespace {

HPComplex f_value(const GluingContext& g, const HPComplex& y) {
    if (g.y4_infinite) return g.fa + g.fb * y;
    HPComplex den = y - g.y4;
    if (abs_c(den) < tol10(12) * (1 + abs_c(g.y4)))
        fail(Err::PoleAtY4, "f evaluated at its pole y4");
    return g.fa + g.fb / den;
}

// round s to the nearest point of the half lattice that is not a full
// lattice point; returns the rounded point and the residual through res
HPComplex half_lattice_round(const EllipticLattice& lat, const HPComplex& s, real_t& res) {
    HPComplex best;
    real_t bd = -1;
    for (int mi = -4; mi <= 4; ++mi) {
        for (int ni = -4; ni <= 4; ++ni) {
            if (mi % 2 == 0 && ni % 2 == 0) continue;
            HPComplex cand = (lat.b1 * real_t(mi) + lat.b2 * real_t(ni)) * real_t(0.5);
            real_t dist = abs_c(cand - s);
            if (bd < 0 || dist < bd) {
                bd = dist;
                best = cand;
            }
        }
    }
    res = bd;
    return best;
}

// distance from z to the nearest lattice point, by rounding the basis
// coordinates from the Gram system
real_t lattice_residual(const EllipticLattice& lat, const HPComplex& z) {
    real_t d11 = norm(lat.b1), d22 = norm(lat.b2);
    real_t d12 = lat.b1.re * lat.b2.re + lat.b1.im * lat.b2.im;
    real_t det = d11 * d22 - d12 * d12;
    if (!(det > 0)) return real_t("1e30");
    real_t z1 = z.re * lat.b1.re + z.im * lat.b1.im;
    real_t z2 = z.re * lat.b2.re + z.im * lat.b2.im;
    real_t u = (z1 * d22 - z2 * d12) / det;
    real_t v = (z2 * d11 - z1 * d12) / det;
    real_t ur = boost::multiprecision::round(u), vr = boost::multiprecision::round(v);
    HPComplex resid = z - lat.b1 * ur - lat.b2 * vr;
    return abs_c(resid);
}

// decide whether z is a lattice point of lat, within tolerance
bool is_lattice_point(const EllipticLattice& lat, const HPComplex& z, const real_t& tol) {
    return lattice_residual(lat, z) < tol;
}

// candidates for the continued preimage near sprev
HPComplex nearest_preimage(const EllipticLattice& lat, const HPComplex& sraw,
                           const HPComplex& sprev) {
    HPComplex best;
    real_t bd = -1;
    for (int sg = 0; sg < 2; ++sg) {
        HPComplex base = sg == 0 ? sraw : -sraw;
        for (int mi = -2; mi <= 2; ++mi) {
            for (int ni = -2; ni <= 2; ++ni) {
                HPComplex cand = base + lat.b1 * real_t(mi) + lat.b2 * real_t(ni);
                real_t dist = abs_c(cand - sprev);
                if (bd < 0 || dist < bd) {
                    bd = dist;
                    best = cand;
                }
            }
        }
    }
    return best;
}

// analytic continuation of s(y) = inverse wp of f(y) along the straight path
// from the frozen base point, with adaptive subdivision
HPComplex continue_s(const GluingContext& g, const HPComplex& ytarget) {
    HPComplex sprev = g.base_s;
    HPComplex yprev = g.base_y;
    real_t jump = real_t("0.3") * abs_c(g.lat12.b1);
    real_t min_step = tol10(current_digits() - 10) * (1 + abs_c(ytarget));
    std::vector<HPComplex> stack{ytarget};
    int guard = 0;
    while (!stack.empty()) {
        if (++guard > 200000) fail(Err::Internal, "path continuation stalled");
        HPComplex ynext = stack.back();
        HPComplex sraw = weierstrass_p_inv(g.lat12, f_value(g, ynext));
        HPComplex cand = nearest_preimage(g.lat12, sraw, sprev);
        if (abs_c(cand - sprev) > jump && abs_c(ynext - yprev) > min_step) {
            stack.push_back((ynext + yprev) * real_t(0.5));
            continue;
        }
        sprev = cand;
        yprev = ynext;
        stack.pop_back();
    }
    return sprev;
}

}  // namespace

HPComplex f_of_y(const GluingContext& g, const HPComplex& y) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    return f_value(g, y);
}

CJet f_jet(const GluingContext& g, const HPComplex& y, int len) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    CJet out(len);
    if (g.y4_infinite) {
        out[0] = g.fa + g.fb * y;
        if (len > 1) out[1] = g.fb;
        return out;
    }
    HPComplex den = y - g.y4;
    if (abs_c(den) < tol10(12) * (1 + abs_c(g.y4)))
        fail(Err::PoleAtY4, "f expanded at its pole y4");
    HPComplex term = g.fb / den;
    out[0] = g.fa + term;
    for (int k = 1; k < len; ++k) {
        term = -term / den;
        out[k] = term;
    }
    return out;
}

bool in_domain(const GluingContext& g, const HPComplex& y) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    real_t scale = 1 + abs_c(y);
    if (curve_distance(g.curve, y) < real_t("1e-3") * scale) return true;
    int cross = ray_crossings(g.curve, y);
    bool odd = (cross % 2) != 0;
    return g.curve.bounded ? odd : !odd;
}

GluingContext build_gluing(const StepModel& m, const Rat& t, int precision) {
    GluingContext g;
    g.bc = make_branch_context(m, t, precision);
    ScopedPrecision sp(precision + hp_guard_digits());
    g.per = periods(g.bc);
    g.lat12 = make_lattice(g.per.w1, g.per.w2);
    g.lat13 = make_lattice(g.per.w1, g.per.w3);
    g.y4_infinite = g.bc.branch.y4_infinite;
    auto dtd = dense_derivative(g.bc.dt);
    auto dtdd = dense_derivative(dtd);
    if (g.y4_infinite) {
        g.y4 = HPComplex(0);
        g.fa = eval_cx(dtdd, HPComplex(0)) / real_t(6);
        g.fb = HPComplex(to_real(g.bc.dt.size() > 3 ? g.bc.dt[3] : Rat(0)));
    } else {
        g.y4 = g.bc.branch.y[3];
        g.fa = eval_cx(dtdd, g.y4) / real_t(6);
        g.fb = eval_cx(dtd, g.y4);
    }
    g.y2 = g.bc.branch.y[1];
    g.curve = curve_L(g.bc, 257);
    g.base_y = HPComplex(0);

    // f(y2) is a critical value of the (w1, w2) function; its preimage is the
    // half period that the gluing must cancel, so the shift is its negative
    HPComplex s2 = weierstrass_p_inv(g.lat12, f_value(g, g.y2));
    real_t hres;
    HPComplex h2 = half_lattice_round(g.lat12, s2, hres);
    if (hres > tol10(2 * current_digits() / 3) * abs_c(g.lat12.b1))
        fail(Err::Internal, "f(y2) is not a critical value of the lattice function");
    g.shift = -h2;

    if (!in_domain(g, g.base_y))
        fail(Err::ClassificationFailed, "base point 0 is not inside the curve region");

    // freeze the branch: continue s to a probe near the pole y2 and pick the
    // period-class translate whose image lands on the pole lattice; lattice
    // distance separates the true translate from near-commensurable impostors
    // (magnitude of the lattice function does not), and translates differing
    // by an exact lattice vector are the same class
    g.base_s = weierstrass_p_inv(g.lat12, f_value(g, g.base_y));
    HPComplex probe = g.y2 + (g.base_y - g.y2) * real_t("1e-10");
    HPComplex sprobe = continue_s(g, probe);
    real_t scale13 = abs_c(g.lat13.b1);
    real_t dist[5];
    for (int n = -2; n <= 2; ++n)
        dist[n + 2] = lattice_residual(g.lat13, g.shift + sprobe + g.per.w2 * real_t(n));
    int nbest = -2;
    for (int n = -1; n <= 2; ++n)
        if (dist[n + 2] < dist[nbest + 2]) nbest = n;
    if (!(dist[nbest + 2] < real_t("1e-3") * scale13))
        fail(Err::ClassificationFailed, "branch anchor probe misses the pole lattice");
    real_t eqtol = tol10(current_digits() / 2) * (1 + scale13);
    int pick = nbest;
    for (int n = -2; n <= 2; ++n) {
        if (n == nbest) continue;
        if (is_lattice_point(g.lat13, g.per.w2 * real_t(n - nbest), eqtol)) {
            if (std::abs(n) < std::abs(pick) || (std::abs(n) == std::abs(pick) && n < pick))
                pick = n;
        } else if (!(dist[n + 2] > 20 * dist[nbest + 2])) {
            fail(Err::ClassificationFailed, "branch selection anchor is not decisive");
        }
    }
    g.base_s = g.base_s + g.per.w2 * real_t(pick);
    return g;
}

HPComplex gluing_w(const GluingContext& g, const HPComplex& y) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    if (abs_c(y - g.y2) < real_t("1e-3") * (1 + abs_c(g.y2)))
        fail(Err::AtPole, "y is inside the excluded disk around the pole y2");
    if (!in_domain(g, y)) fail(Err::OutsideDomain, "y is outside the curve region");
    HPComplex s = continue_s(g, y);
    return weierstrass_p(g.lat13, g.shift + s);
}

CJet gluing_w_jet(const GluingContext& g, const HPComplex& y, int len) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    if (abs_c(y - g.y2) < real_t("1e-3") * (1 + abs_c(g.y2)))
        fail(Err::AtPole, "jet requested inside the excluded disk around y2");
    if (!in_domain(g, y)) fail(Err::OutsideDomain, "jet requested outside the curve region");
    HPComplex s = continue_s(g, y);
    CJet F = f_jet(g, y, len);
    CJet P = weierstrass_p_taylor(g.lat12, s, len);
    HPComplex p1 = P[1];
    if (abs_c(p1) >= tol10(2 * current_digits() / 3) * (1 + abs_c(P[0]))) {
        CJet sig(len);
        for (int k = 1; k < len; ++k) {
            CJet R = jet_sub(F, jet_compose(P, sig));
            sig[k] = R[k] / p1;
        }
        CJet W = weierstrass_p_taylor(g.lat13, g.shift + s, len);
        return jet_compose(W, sig);
    }
    // ramification point of the uniformization: s sits at a half period, the
    // local parameter is h with y - y0 quadratic in h, and the jet goes
    // through the even parts of both lattice functions in eta = h^2
    real_t hres;
    HPComplex H = half_lattice_round(g.lat12, s, hres);
    if (hres > tol10(2 * current_digits() / 3) * abs_c(g.lat12.b1))
        fail(Err::Internal, "vanishing derivative away from a half period");
    HPComplex z13 = g.shift + H;
    if (!is_lattice_point(g.lat13, z13 + z13, tol10(10) * abs_c(g.lat13.b1)))
        fail(Err::Internal, "jet at a ramification point that the gluing does not smooth");
    CJet E = weierstrass_p_taylor(g.lat12, H, 2 * len);
    CJet Pe(len);
    for (int k = 0; k < len; ++k) Pe[k] = E[2 * k];
    if (abs_c(Pe[1]) < tol10(8) * (1 + abs_c(Pe[0])))
        fail(Err::Internal, "degenerate even expansion at a half period");
    CJet eta(len);
    for (int k = 1; k < len; ++k) {
        CJet R = jet_sub(F, jet_compose(Pe, eta));
        eta[k] = R[k] / Pe[1];
    }
    CJet W = weierstrass_p_taylor(g.lat13, z13, 2 * len);
    CJet We(len);
    for (int k = 0; k < len; ++k) We[k] = W[2 * k];
    return jet_compose(We, eta);
}

namespace {

// Taylor coefficients of a dense polynomial about p, by synthetic division
CJet shift_jet(const std::vector<Rat>& coeffs, const HPComplex& p, int len) {
    std::vector<HPComplex> work = to_complex_coeffs(coeffs);
    CJet out(len);
    for (int j = 0; j < len && !work.empty(); ++j) {
        HPComplex rem = work.back();
        for (size_t i = work.size() - 1; i-- > 0;) {
            HPComplex next = work[i] + rem * p;
            work[i] = rem;
            rem = next;
        }
        out[j] = rem;
        work.pop_back();
    }
    return out;
}

struct PoleSite {
    HPComplex p;
    int mult = 0;
    std::vector<HPComplex> alpha;  // alpha[e-1] multiplies (w(y) - w(p))^-e
    HPComplex wp;                  // w(p)
    CJet glau{1};                  // Laurent block of G at p: coefficient j is h^(j-mult)
    CJet u{1};                     // (w(p+h) - w(p))/h
};

std::vector<std::pair<HPComplex, int>> cluster_roots(const std::vector<HPComplex>& roots) {
    std::vector<std::pair<HPComplex, int>> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        HPComplex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            if (abs_c(roots[j] - roots[i]) < real_t("1e-6") * (1 + abs_c(roots[i]))) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        out.emplace_back(sum / real_t(count), count);
    }
    return out;
}

// w at a query point, allowing analytic continuation beyond the curve: the
// real branch points a straight path can cross have trivial monodromy, since
// the gluing is single valued on the domain and even about the pole class,
// so the continued value is path independent
HPComplex w_continued(const GluingContext& g, const HPComplex& y) {
    if (abs_c(y - g.y2) < real_t("1e-3") * (1 + abs_c(g.y2)))
        fail(Err::AtPole, "y is inside the excluded disk around the pole y2");
    HPComplex s = continue_s(g, y);
    return weierstrass_p(g.lat13, g.shift + s);
}

}  // namespace

HPComplex evaluate_q0y(const GluingContext& g, const HPComplex& y) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    const auto& tab = builtin_certificate_table();
    auto it = tab.find(g.bc.model.name);
    if (it == tab.end() || !it->second.decoupling)
        fail(Err::BadInput, "model has no decoupling certificate");
    const RatFunc& G = it->second.decoupling->G;
    auto gnum = dense_at_t(G.num(), Var::y, g.bc.t);
    auto gden = dense_at_t(G.den(), Var::y, g.bc.t);
    if (g.bc.ct.size() < 2)
        fail(Err::BadInput, "constant ct(y): use the reversed Kreweras evaluator");

    auto geval = [&](const HPComplex& z) { return eval_cx(gnum, z) / eval_cx(gden, z); };

    // poles of G inside the domain
    std::vector<PoleSite> sites;
    if (gden.size() > 1) {
        for (const auto& [p, mult] : cluster_roots(poly_roots(to_complex_coeffs(gden)))) {
            if (!in_domain(g, p)) continue;
            if (abs_c(p - g.y2) < real_t("1e-3") * (1 + abs_c(g.y2)))
                fail(Err::PoleCollision, "a pole of G collides with the pole y2 of w");
            PoleSite s;
            s.p = p;
            s.mult = mult;
            sites.push_back(s);
        }
    }

    for (auto& s : sites) {
        CJet wj = gluing_w_jet(g, s.p, s.mult + 2);
        s.wp = wj[0];
        s.u = CJet(s.mult + 1);
        for (int k = 0; k <= s.mult; ++k) s.u[k] = wj[k + 1];
        // Laurent coefficients of G at p: G(p+h) = h^-mult * N(h) / Dm(h)
        CJet N = shift_jet(gnum, s.p, 2 * s.mult + 1);
        CJet D = shift_jet(gden, s.p, 2 * s.mult + 1);
        real_t dscale = 0;
        for (int k = 0; k < D.len(); ++k) dscale += abs_c(D[k]);
        for (int k = 0; k < s.mult; ++k)
            if (abs_c(D[k]) > tol10(8) * dscale)
                fail(Err::Internal, "pole multiplicity mismatch in G");
        CJet Dm(s.mult + 1);
        for (int k = 0; k <= s.mult; ++k) Dm[k] = D[k + s.mult];
        CJet Ntr(s.mult + 1);
        for (int k = 0; k <= s.mult && k < N.len(); ++k) Ntr[k] = N[k];
        s.glau = jet_mul(Ntr, jet_recip(Dm));
        // match: r has the principal part of -G, solved from the top order down
        s.alpha.assign(static_cast<size_t>(s.mult), HPComplex(0));
        CJet invu = jet_recip(s.u);
        std::vector<CJet> vpow;
        vpow.emplace_back(s.mult + 1);
        vpow[0][0] = HPComplex(1);
        for (int e = 1; e <= s.mult; ++e) vpow.push_back(jet_mul(vpow.back(), invu));
        for (int k = s.mult; k >= 1; --k) {
            HPComplex target = -s.glau[s.mult - k];
            for (int e = k + 1; e <= s.mult; ++e)
                target -= s.alpha[static_cast<size_t>(e - 1)] * vpow[static_cast<size_t>(e)][e - k];
            s.alpha[static_cast<size_t>(k - 1)] = target / vpow[static_cast<size_t>(k)][0];
        }
    }

    // normalization point: a root of ct(y) inside the closed region
    auto ct_roots = cluster_roots(poly_roots(to_complex_coeffs(g.bc.ct)));
    std::sort(ct_roots.begin(), ct_roots.end(),
              [](const std::pair<HPComplex, int>& a, const std::pair<HPComplex, int>& b) {
                  if (a.first.re != b.first.re) return a.first.re < b.first.re;
                  return a.first.im < b.first.im;
              });
    const std::pair<HPComplex, int>* star = nullptr;
    for (const auto& cr : ct_roots) {
        if (in_domain(g, cr.first)) {
            star = &cr;
            break;
        }
    }
    if (!star) fail(Err::ClassificationFailed, "no root of ct(y) inside the curve region");
    HPComplex ystar = star->first;

    // additive constant from the vanishing of ct(y) Q(0,y) at ystar
    HPComplex C(0);
    const PoleSite* coincident = nullptr;
    for (const auto& s : sites)
        if (abs_c(s.p - ystar) < real_t("1e-9") * (1 + abs_c(ystar))) coincident = &s;
    if (!coincident) {
        HPComplex val = geval(ystar);
        HPComplex wstar = gluing_w(g, ystar);
        for (const auto& s : sites) {
            HPComplex dw = wstar - s.wp;
            HPComplex powv(1);
            for (int e = 1; e <= s.mult; ++e) {
                powv = powv / dw;
                val += s.alpha[static_cast<size_t>(e - 1)] * powv;
            }
        }
        C = -val;
    } else {
        // finite part of G + r at the shared point
        HPComplex val = coincident->glau[coincident->mult];
        CJet invu = jet_recip(coincident->u);
        CJet acc(coincident->mult + 1);
        acc[0] = HPComplex(1);
        for (int e = 1; e <= coincident->mult; ++e) {
            acc = jet_mul(acc, invu);
            val += coincident->alpha[static_cast<size_t>(e - 1)] * acc[e];
        }
        for (const auto& s : sites) {
            if (&s == coincident) continue;
            HPComplex dw = coincident->wp - s.wp;
            HPComplex powv(1);
            for (int e = 1; e <= s.mult; ++e) {
                powv = powv / dw;
                val += s.alpha[static_cast<size_t>(e - 1)] * powv;
            }
        }
        C = -val;
    }

    // assemble t (G + r + C) / ct at the query point
    for (const auto& s : sites)
        if (abs_c(y - s.p) < real_t("1e-6") * (1 + abs_c(s.p)))
            fail(Err::BadInput, "query point is too close to a pole of G");
    HPComplex ctv = eval_cx(g.bc.ct, y);
    if (abs_c(ctv) < tol10(10) * (1 + abs_c(y)))
        fail(Err::ZeroDenominator, "query point is a root of ct(y)");
    HPComplex wy = w_continued(g, y);
    HPComplex val = geval(y) + C;
    for (const auto& s : sites) {
        HPComplex dw = wy - s.wp;
        HPComplex powv(1);
        for (int e = 1; e <= s.mult; ++e) {
            powv = powv / dw;
            val += s.alpha[static_cast<size_t>(e - 1)] * powv;
        }
    }
    return HPComplex(to_real(g.bc.t)) * val / ctv;
}

HPComplex evaluate_q0y(const StepModel& m, const Rat& t, const HPComplex& y, int precision) {
    GluingContext g = build_gluing(m, t, precision);
    return evaluate_q0y(g, y);
}

std::pair<HPComplex, HPComplex> reversed_kreweras_q(const GluingContext& g,
                                                    const HPComplex& y) {
    ScopedPrecision sp(g.bc.precision + hp_guard_digits());
    auto rk = catalog_lookup("reversed-kreweras");
    if (!rk || g.bc.model.canonical_key() != rk->canonical_key())
        fail(Err::BadInput, "evaluator is specific to the reversed Kreweras model");
    if (g.bc.ct.size() != 1 || g.curve.bounded)
        fail(Err::Internal, "unexpected geometry for the reversed Kreweras model");
    CJet wj = gluing_w_jet(g, HPComplex(0), 3);
    HPComplex w0 = wj[0], w1 = wj[1], w2c = wj[2];
    auto A = [&](const HPComplex& z) { return w1 / (gluing_w(g, z) - w0); };

    // the invariant must stay bounded along the unbounded curve
    size_t nsamp = g.curve.y0.size();
    for (size_t idx : {size_t(1), size_t(2), nsamp / 16}) {
        HPComplex yfar = g.curve.y0[idx];
        if (abs_c(A(yfar)) > real_t("1e6"))
            fail(Err::Internal, "invariant blows up along the curve");
    }

    auto [y0of1, y1of1] = y_branches(g.bc, HPComplex(1));
    (void)y1of1;
    if (!in_domain(g, HPComplex(1)) || !in_domain(g, y0of1))
        fail(Err::Internal, "specialization points left the curve region");
    HPComplex one(1);
    HPComplex tq00 = y0of1 + one + one / y0of1 - A(one) - A(y0of1) - (w2c + w2c) / w1;
    if (abs_c(y) < tol10(12)) return {tq00, tq00};
    if (!in_domain(g, y)) fail(Err::OutsideDomain, "y is outside the curve region");
    HPComplex tq = HPComplex(-1) / y + w1 / (gluing_w(g, y) - w0) + tq00 + w2c / w1;
    return {tq, tq00};
}

std::pair<HPComplex, HPComplex> reversed_kreweras_q(const Rat& t, const HPComplex& y,
                                                    int precision) {
    auto rk = catalog_lookup("reversed-kreweras");
    if (!rk) fail(Err::Internal, "catalog is missing the reversed Kreweras model");
    GluingContext g = build_gluing(*rk, t, precision);
    return reversed_kreweras_q(g, y);
}

}
