#include "qwalk/numerics.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::cos;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

real_t eps_at_current_digits(int slack) {
    return pow(real_t(10), -(current_digits() - slack));
}

}

HPComplex poly_eval(const std::vector<HPComplex>& c, const HPComplex& z) {
    HPComplex v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

std::pair<HPComplex, HPComplex> poly_eval_d(const std::vector<HPComplex>& c, const HPComplex& z) {
    HPComplex v(0), d(0);
    for (size_t i = c.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + c[i];
    }
    return {v, d};
}

std::vector<HPComplex> poly_roots(const std::vector<HPComplex>& c) {
    size_t n = c.size();
    while (n > 1 && abs_c(c[n - 1]) == 0) --n;
    if (n <= 1) fail(Err::BadInput, "constant polynomial has no roots");
    std::vector<HPComplex> a(c.begin(), c.begin() + static_cast<long>(n));
    int deg = static_cast<int>(n) - 1;

    // Cauchy-style radius bound
    real_t r(0);
    for (int i = 0; i < deg; ++i) {
        real_t q = abs_c(a[static_cast<size_t>(i)]) / abs_c(a[static_cast<size_t>(deg)]);
        if (q > r) r = q;
    }
    r = r + 1;

    // asymmetric deterministic start to avoid symmetric stalls
    std::vector<HPComplex> z(static_cast<size_t>(deg));
    real_t pi = hp_pi();
    for (int k = 0; k < deg; ++k) {
        real_t th = 2 * pi * k / deg + real_t(7) / 10;
        z[static_cast<size_t>(k)] =
            HPComplex(r * cos(th), r * boost::multiprecision::sin(th)) * (real_t(8) / 10);
    }

    real_t tol = eps_at_current_digits(6) * (r + 1);
    for (int it = 0; it < 400; ++it) {
        real_t worst(0);
        for (int k = 0; k < deg; ++k) {
            HPComplex num = poly_eval(a, z[static_cast<size_t>(k)]) / a[static_cast<size_t>(deg)];
            HPComplex den(1);
            for (int j = 0; j < deg; ++j)
                if (j != k) den *= z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)];
            HPComplex step = num / den;
            z[static_cast<size_t>(k)] -= step;
            real_t s = abs_c(step);
            if (s > worst) worst = s;
        }
        if (worst < tol) break;
        if (it == 399) fail(Err::Internal, "root iteration did not converge");
    }

    // Newton polish on the original polynomial
    for (int k = 0; k < deg; ++k) {
        for (int it = 0; it < 8; ++it) {
            auto [v, d] = poly_eval_d(a, z[static_cast<size_t>(k)]);
            if (abs_c(d) == 0) break;
            HPComplex step = v / d;
            z[static_cast<size_t>(k)] -= step;
            if (abs_c(step) < tol / 100) break;
        }
    }
    return z;
}

namespace {

std::map<std::pair<int, unsigned>, GLRule> gl_cache;
std::mutex gl_mutex;

GLRule build_gl(int n) {
    GLRule rule;
    rule.x.resize(static_cast<size_t>(n));
    rule.w.resize(static_cast<size_t>(n));
    real_t pi = hp_pi();
    real_t tol = eps_at_current_digits(4);
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev initial guess, then Newton on P_n
        real_t x = cos(pi * (4 * i + 3) / (4 * n + 2));
        real_t dp(0);
        for (int it = 0; it < 64; ++it) {
            real_t p0(1), p1(x);
            for (int k = 2; k <= n; ++k) {
                real_t p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            real_t step = p1 / dp;
            x -= step;
            if (abs(step) < tol) break;
            if (it == 63) fail(Err::Internal, "Legendre node iteration stalled");
        }
        real_t w = 2 / ((1 - x * x) * dp * dp);
        rule.x[static_cast<size_t>(i)] = x;
        rule.w[static_cast<size_t>(i)] = w;
        rule.x[static_cast<size_t>(n - 1 - i)] = -x;
        rule.w[static_cast<size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.x[static_cast<size_t>(n / 2)] = 0;
    return rule;
}

}

const GLRule& gauss_legendre(int n) {
    if (n < 2) fail(Err::BadInput, "rule needs at least 2 nodes");
    std::lock_guard<std::mutex> lock(gl_mutex);
    auto key = std::make_pair(n, real_t::default_precision());
    auto it = gl_cache.find(key);
    if (it == gl_cache.end()) it = gl_cache.emplace(key, build_gl(n)).first;
    return it->second;
}

real_t integrate_gl(const std::function<real_t(const real_t&)>& f, const real_t& a,
                    const real_t& b, int n) {
    const GLRule& rule = gauss_legendre(n);
    real_t mid = (a + b) / 2, hw = (b - a) / 2;
    real_t s(0);
    for (size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(mid + hw * rule.x[i]);
    return s * hw;
}

real_t integrate_adaptive(const std::function<real_t(const real_t&)>& f, const real_t& a,
                          const real_t& b, const real_t& tol) {
    static const int ladder[] = {32, 64, 128, 256, 384, 512};
    real_t prev = integrate_gl(f, a, b, 16);
    for (int n : ladder) {
        real_t cur = integrate_gl(f, a, b, n);
        real_t scale = abs(cur) > 1 ? abs(cur) : real_t(1);
        if (abs(cur - prev) < tol * scale) return cur;
        prev = cur;
    }
    fail(Err::QuadratureNonConvergent, "node-doubling ladder exhausted");
}

CJet jet_add(const CJet& a, const CJet& b) {
    CJet r(a.len());
    for (int k = 0; k < a.len(); ++k) r[k] = a[k] + b[k];
    return r;
}

CJet jet_sub(const CJet& a, const CJet& b) {
    CJet r(a.len());
    for (int k = 0; k < a.len(); ++k) r[k] = a[k] - b[k];
    return r;
}

CJet jet_mul(const CJet& a, const CJet& b) {
    CJet r(a.len());
    for (int i = 0; i < a.len(); ++i)
        for (int j = 0; i + j < a.len() && j < b.len(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

CJet jet_scale(const CJet& a, const HPComplex& s) {
    CJet r(a.len());
    for (int k = 0; k < a.len(); ++k) r[k] = a[k] * s;
    return r;
}

CJet jet_recip(const CJet& a) {
    if (abs_c(a[0]) == 0) fail(Err::ZeroDenominator, "jet has zero constant term");
    CJet r(a.len());
    r[0] = HPComplex(1) / a[0];
    for (int k = 1; k < a.len(); ++k) {
        HPComplex s(0);
        for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

CJet jet_compose(const CJet& g, const CJet& f) {
    if (abs_c(f[0]) != 0) fail(Err::BadInput, "inner jet must vanish at the base point");
    CJet r(g.len());
    r[0] = g[g.len() - 1];
    for (int k = g.len() - 2; k >= 0; --k) {
        r = jet_mul(r, f);
        r[0] += g[k];
    }
    return r;
}

CJet jet_downshift(const CJet& a) {
    CJet r(a.len());
    for (int k = 1; k < a.len(); ++k) r[k - 1] = a[k];
    return r;
}

}
