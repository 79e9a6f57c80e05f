#include "qwalk/elliptic.hpp"

#include <algorithm>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::round;

real_t eps10(int exponent_slack) {
    return pow(real_t(10), -(current_digits() - exponent_slack));
}

// Lagrange-Gauss reduction; stops on boundary ties instead of cycling
void reduce_basis(HPComplex& b1, HPComplex& b2) {
    for (int it = 0;; ++it) {
        if (it > 200) fail(Err::LatticeReductionFailed, "basis reduction did not settle");
        if (norm(b2) < norm(b1)) std::swap(b1, b2);
        real_t q = round((b2 / b1).re);
        if (q == 0) break;
        HPComplex v = b2 - b1 * q;
        if (norm(v) >= norm(b2)) break;
        b2 = v;
    }
    if ((b2 / b1).im < 0) b2 = -b2;
}

// series coefficients c_m with wp = 1/u^2 + sum c_m u^(2m)
std::vector<HPComplex> laurent_coeffs(const HPComplex& g2, const HPComplex& g3) {
    int n = current_digits() * 11 / 10 + 12;
    std::vector<HPComplex> c(static_cast<size_t>(n + 1));
    c[1] = g2 / real_t(20);
    c[2] = g3 / real_t(28);
    for (int m = 3; m <= n; ++m) {
        HPComplex s(0);
        for (int i = 1; i <= m - 2; ++i) s += c[static_cast<size_t>(i)] * c[static_cast<size_t>(m - 1 - i)];
        c[static_cast<size_t>(m)] = s * real_t(3) / real_t((2 * m + 3) * (m - 2));
    }
    return c;
}

}

std::pair<HPComplex, HPComplex> eisenstein_invariants(const HPComplex& wa, const HPComplex& wb) {
    if (abs_c(wa) == 0 || abs_c(wb) == 0) fail(Err::DegenerateLattice, "zero period");
    HPComplex ratio = wb / wa;
    if (abs(ratio.im) < eps10(8) * (1 + abs(ratio.re)))
        fail(Err::DegenerateLattice, "periods are collinear");

    // Gauss reduction to |Re tau| <= 1/2 <= |tau|
    HPComplex b1 = wa, b2 = wb;
    reduce_basis(b1, b2);
    HPComplex tau = b2 / b1;

    real_t two_pi = 2 * hp_pi();
    HPComplex q = exp_c(HPComplex(-two_pi * tau.im, two_pi * tau.re));
    real_t tol = eps10(-6);
    HPComplex e4(1), e6(1);
    HPComplex qn(1);
    for (int n = 1;; ++n) {
        qn *= q;
        real_t mag = abs_c(qn);
        HPComplex frac = qn / (HPComplex(1) - qn);
        real_t n2 = real_t(n) * n;
        e4 += real_t(240) * n2 * n * frac;
        e6 -= real_t(504) * n2 * n2 * real_t(n) * frac;
        if (mag * n2 * n2 * n < tol) break;
        if (n > 4000) fail(Err::Internal, "Eisenstein series stalled");
    }
    HPComplex scale = HPComplex(two_pi) / b1;
    HPComplex s2 = scale * scale;
    HPComplex s4 = s2 * s2;
    HPComplex g2 = s4 * e4 / real_t(12);
    HPComplex g3 = s4 * s2 * e6 / real_t(216);
    return {g2, g3};
}

EllipticLattice make_lattice(const HPComplex& wa, const HPComplex& wb) {
    EllipticLattice lat;
    lat.wa = wa;
    lat.wb = wb;
    auto [g2, g3] = eisenstein_invariants(wa, wb);
    lat.g2 = g2;
    lat.g3 = g3;

    // store the reduced basis computed the same way
    HPComplex b1 = wa, b2 = wb;
    reduce_basis(b1, b2);
    lat.b1 = b1;
    lat.b2 = b2;

    std::vector<HPComplex> cubic = {-g3, -g2, HPComplex(0), HPComplex(4)};
    lat.e = poly_roots(cubic);
    std::sort(lat.e.begin(), lat.e.end(), [](const HPComplex& a, const HPComplex& b) {
        if (a.re != b.re) return a.re > b.re;
        return a.im > b.im;
    });
    lat.laurent = laurent_coeffs(g2, g3);
    return lat;
}

HPComplex reduce_mod_lattice(const EllipticLattice& lat, const HPComplex& z) {
    real_t det = lat.b1.re * lat.b2.im - lat.b1.im * lat.b2.re;
    real_t al = (z.re * lat.b2.im - z.im * lat.b2.re) / det;
    real_t be = (lat.b1.re * z.im - lat.b1.im * z.re) / det;
    HPComplex r = z - lat.b1 * round(al) - lat.b2 * round(be);
    // nudge to the shortest equivalent representative
    const HPComplex cands[] = {lat.b1, -lat.b1, lat.b2, -lat.b2, lat.b1 + lat.b2,
                               -(lat.b1 + lat.b2), lat.b1 - lat.b2, lat.b2 - lat.b1};
    for (bool moved = true; moved;) {
        moved = false;
        for (const HPComplex& c : cands) {
            if (norm(r + c) < norm(r)) {
                r += c;
                moved = true;
            }
        }
    }
    return r;
}

std::pair<HPComplex, HPComplex> weierstrass_p_pair(const EllipticLattice& lat, const HPComplex& z) {
    HPComplex u = reduce_mod_lattice(lat, z);
    real_t radius = abs_c(lat.b1);
    if (abs_c(u) < eps10(4) * radius) fail(Err::AtPole, "wp evaluated at a lattice point");

    real_t limit = radius * real_t(35) / 100;
    int halvings = 0;
    while (abs_c(u) > limit) {
        u = u / real_t(2);
        if (++halvings > 64) fail(Err::Internal, "halving did not reach the series disk");
    }

    HPComplex u2 = u * u;
    HPComplex p = HPComplex(1) / u2;
    HPComplex dp = HPComplex(-2) / (u2 * u);
    HPComplex upow = u2;
    for (size_t m = 1; m < lat.laurent.size(); ++m) {
        p += lat.laurent[m] * upow;
        dp += lat.laurent[m] * real_t(2 * static_cast<long>(m)) * upow / u;
        upow *= u2;
    }

    HPComplex half_g2 = lat.g2 / real_t(2);
    for (int k = 0; k < halvings; ++k) {
        if (abs_c(dp) < eps10(6)) fail(Err::Internal, "duplication hit a critical point");
        HPComplex p2 = real_t(6) * p * p - half_g2;
        HPComplex a = p2 / (real_t(2) * dp);
        HPComplex ad = (real_t(12) * p * dp * dp - p2 * p2) / (real_t(2) * dp * dp);
        HPComplex pn = real_t(-2) * p + a * a;
        dp = -dp + a * ad;
        p = pn;
    }
    return {p, dp};
}

HPComplex weierstrass_p(const EllipticLattice& lat, const HPComplex& z) {
    return weierstrass_p_pair(lat, z).first;
}

CJet weierstrass_p_taylor(const EllipticLattice& lat, const HPComplex& z0, int len) {
    auto [p, dp] = weierstrass_p_pair(lat, z0);
    CJet t(len);
    t[0] = p;
    if (len > 1) t[1] = dp;
    for (int k = 0; k + 2 < len; ++k) {
        HPComplex s(0);
        for (int i = 0; i <= k; ++i) s += t[i] * t[k - i];
        s = real_t(6) * s;
        if (k == 0) s -= lat.g2 / real_t(2);
        t[k + 2] = s / real_t((k + 2) * (k + 1));
    }
    return t;
}

HPComplex rf_carlson(HPComplex x, HPComplex y, HPComplex z) {
    int zeros = (abs_c(x) == 0) + (abs_c(y) == 0) + (abs_c(z) == 0);
    if (zeros >= 2) fail(Err::IntegralNonConvergent, "R_F diverges with two zero arguments");
    real_t tol = pow(real_t(10), -(current_digits() / 6 + 2));
    for (int it = 0;; ++it) {
        HPComplex mu = (x + y + z) / real_t(3);
        real_t scale = abs_c(mu);
        real_t spread = abs_c(x - mu);
        spread = std::max(spread, abs_c(y - mu));
        spread = std::max(spread, abs_c(z - mu));
        if (spread < tol * scale) break;
        if (it > 300) fail(Err::IntegralNonConvergent, "R_F duplication stalled");
        HPComplex sx = sqrt_c(x), sy = sqrt_c(y), sz = sqrt_c(z);
        HPComplex lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) / real_t(4);
        y = (y + lam) / real_t(4);
        z = (z + lam) / real_t(4);
    }
    HPComplex a = (x + y + z) / real_t(3);
    HPComplex dx = HPComplex(1) - x / a;
    HPComplex dy = HPComplex(1) - y / a;
    HPComplex dz = -dx - dy;
    HPComplex e2 = dx * dy - dz * dz;
    HPComplex e3 = dx * dy * dz;
    HPComplex series = HPComplex(1) - e2 / real_t(10) + e3 / real_t(14) +
                       e2 * e2 / real_t(24) - e2 * e3 * real_t(3) / real_t(44);
    return series / sqrt_c(a);
}

namespace {

// fold to the canonical representative: centered cell, then Im >= 0
HPComplex fold_pm(const EllipticLattice& lat, const HPComplex& z) {
    HPComplex r = reduce_mod_lattice(lat, z);
    if (r.im < 0 || (r.im == 0 && r.re < 0)) r = -r;
    return r;
}

}

HPComplex weierstrass_p_inv(const EllipticLattice& lat, const HPComplex& v) {
    real_t radius = abs_c(lat.b1);
    real_t step_cap = radius / 4;
    real_t target = eps10(10) * (1 + abs_c(v));

    const real_t tenth = real_t(1) / 10;
    const HPComplex bumps[] = {HPComplex(0), lat.b1 * tenth, lat.b2 * tenth,
                               (lat.b1 + lat.b2) * tenth};
    HPComplex seed = rf_carlson(v - lat.e[0], v - lat.e[1], v - lat.e[2]);
    for (const HPComplex& bump : bumps) {
        HPComplex z = seed + bump;
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
            auto [p, dp] = weierstrass_p_pair(lat, z);
            real_t resid = abs_c(p - v);
            if (resid < target) {
                ok = true;
                break;
            }
            if (abs_c(dp) == 0) break;
            HPComplex step = (p - v) / dp;
            real_t s = abs_c(step);
            if (s > step_cap) step = step * (step_cap / s);
            z -= step;
            z = reduce_mod_lattice(lat, z);
        }
        if (ok) return fold_pm(lat, z);
    }
    fail(Err::IntegralNonConvergent, "wp inverse did not converge");
}

namespace {

EllipticLattice lattice_checked(const HPComplex& g2, const HPComplex& g3,
                                const HPComplex& wa, const HPComplex& wb) {
    EllipticLattice lat = make_lattice(wa, wb);
    real_t scale = abs_c(lat.g2) + abs_c(lat.g3) + real_t(1);
    real_t tol = real_t("1e-6") * scale;
    if (abs_c(lat.g2 - g2) > tol || abs_c(lat.g3 - g3) > tol)
        fail(Err::BadInput, "invariants do not match the periods");
    return lat;
}

}

HPComplex weierstrass_p(const HPComplex& z, const HPComplex& g2, const HPComplex& g3,
                        const HPComplex& wa, const HPComplex& wb) {
    return weierstrass_p(lattice_checked(g2, g3, wa, wb), z);
}

HPComplex weierstrass_p_inv(const HPComplex& v, const HPComplex& g2, const HPComplex& g3,
                            const HPComplex& wa, const HPComplex& wb) {
    return weierstrass_p_inv(lattice_checked(g2, g3, wa, wb), v);
}

}
