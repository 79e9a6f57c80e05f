#include "qwalk/poly.hpp"

#include <algorithm>
#include <sstream>

namespace qwalk {

const char* var_name(Var v) {
    static const char* names[NVARS] = {"t", "x", "y", "u", "lam"};
    return names[static_cast<int>(v)];
}

Poly::Poly(const Rat& c) {
    if (!qwalk::is_zero(c)) terms_[Exps{}] = c;
}

Poly::Poly(long c) {
    if (c != 0) terms_[Exps{}] = Rat(c);
}

Poly Poly::var(Var v, int e) {
    Poly p;
    if (e == 0) return Poly(1);
    Exps ex{};
    ex[static_cast<int>(v)] = static_cast<int16_t>(e);
    p.terms_[ex] = Rat(1);
    return p;
}

Poly Poly::mono(const Exps& e, const Rat& c) {
    Poly p;
    if (!qwalk::is_zero(c)) p.terms_[e] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exps{};
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) fail(Err::Internal, "constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return exps_total(terms_.rbegin()->first);
}

int Poly::degree(Var v) const {
    int iv = static_cast<int>(v);
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, int(e[iv]));
    return d;
}

bool Poly::contains(Var v) const {
    int iv = static_cast<int>(v);
    for (const auto& [e, c] : terms_)
        if (e[iv] > 0) return true;
    return false;
}

const std::pair<const Exps, Rat>& Poly::leading() const {
    if (terms_.empty()) fail(Err::Internal, "leading term of zero polynomial");
    return *terms_.rbegin();
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (qwalk::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

bool Poly::operator<(const Poly& o) const {
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
        MonoLess less;
        if (less(it->first, jt->first)) return true;
        if (less(jt->first, it->first)) return false;
        int c = cmp(it->second, jt->second);
        if (c != 0) return c < 0;
    }
    return it == terms_.end() && jt != o.terms_.end();
}

void Poly::add_term(const Exps& e, const Rat& c) {
    if (qwalk::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (qwalk::is_zero(it->second)) terms_.erase(it);
    }
}

Poly Poly::coeff_of(Var v, int k) const {
    int iv = static_cast<int>(v);
    Poly r;
    for (const auto& [e, c] : terms_) {
        if (e[iv] == k) {
            Exps e2 = e;
            e2[iv] = 0;
            r.terms_[e2] = c;
        }
    }
    return r;
}

std::map<int, Poly> Poly::coeffs_in(Var v) const {
    int iv = static_cast<int>(v);
    std::map<int, Poly> r;
    for (const auto& [e, c] : terms_) {
        Exps e2 = e;
        e2[iv] = 0;
        r[e[iv]].terms_[e2] = c;
    }
    return r;
}

Rat Poly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::derivative(Var v) const {
    int iv = static_cast<int>(v);
    Poly r;
    for (const auto& [e, c] : terms_) {
        if (e[iv] == 0) continue;
        Exps e2 = e;
        e2[iv] -= 1;
        r.add_term(e2, c * Rat(e[iv]));
    }
    return r;
}

Poly Poly::subst(Var v, const Poly& p) const {
    auto by = coeffs_in(v);
    Poly r;
    Poly pw(1);
    int prev = 0;
    for (const auto& [k, coef] : by) {
        for (; prev < k; ++prev) pw = pw * p;
        r += coef * pw;
    }
    return r;
}

Poly Poly::swap_vars(Var a, Var b) const {
    int ia = static_cast<int>(a), ib = static_cast<int>(b);
    Poly r;
    for (const auto& [e, c] : terms_) {
        Exps e2 = e;
        std::swap(e2[ia], e2[ib]);
        r.terms_[e2] = c;
    }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

Poly operator+(Poly a, const Poly& b) {
    a += b;
    return a;
}

Poly operator-(Poly a, const Poly& b) {
    a -= b;
    return a;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exps e;
            for (int i = 0; i < NVARS; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly operator*(Poly a, const Rat& c) {
    a *= c;
    return a;
}

Poly operator*(const Rat& c, Poly a) {
    a *= c;
    return a;
}

std::optional<Poly> exact_divide(const Poly& num, const Poly& den) {
    if (den.is_zero()) fail(Err::ZeroDenominator, "exact_divide by zero polynomial");
    Poly q;
    Poly r = num;
    const auto& [de, dc] = den.leading();
    while (!r.is_zero()) {
        const auto& [re, rc] = r.leading();
        Exps e;
        for (int i = 0; i < NVARS; ++i) {
            int d = re[i] - de[i];
            if (d < 0) return std::nullopt;
            e[i] = static_cast<int16_t>(d);
        }
        Poly m = Poly::mono(e, rc / dc);
        q += m;
        r -= m * den;
    }
    return q;
}

Poly normalize_unit(const Poly& p) {
    if (p.is_zero()) return p;
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(p.leading().second) < 0) scale = -scale;
    Poly r = p;
    r *= scale;
    return r;
}

namespace {

// content and primitive part with respect to v
std::pair<Poly, Poly> content_pp(const Poly& p, Var v) {
    auto by = p.coeffs_in(v);
    Poly content;
    for (const auto& [k, c] : by) content = poly_gcd(content, c);
    auto pp = exact_divide(p, content);
    if (!pp) fail(Err::Internal, "content does not divide polynomial");
    return {content, *pp};
}

// pseudo-remainder of a by b in v: lc(b)^(d+1) * a = q*b + rem
Poly prem(const Poly& a, const Poly& b, Var v) {
    int db = b.degree(v);
    Poly lb = b.coeff_of(v, db) ;
    Poly r = a;
    int steps = a.degree(v) - db + 1;
    int done = 0;
    while (!r.is_zero() && r.degree(v) >= db) {
        int dr = r.degree(v);
        Poly lr = r.coeff_of(v, dr);
        r = lb * r - lr * Poly::var(v, dr - db) * b;
        ++done;
    }
    for (; done < steps; ++done) r = lb * r;
    return r;
}

// dense univariate machinery: much faster than the generic map-based route
// for the rational-function coefficient arithmetic in one variable

// integer coefficient vector (index = exponent) after clearing denominators
// and stripping integer content; empty when p has a negative exponent
std::vector<Int> dense_primitive(const Poly& p, Var v) {
    int vi = static_cast<int>(v);
    int d = p.degree(v);
    std::vector<Rat> rs(static_cast<size_t>(d) + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) {
        if (e[vi] < 0) return {};
        rs[static_cast<size_t>(e[vi])] = c;
    }
    Int den_lcm = 1;
    for (const auto& r : rs)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
    std::vector<Int> out(rs.size());
    Int content = 0;
    for (size_t k = 0; k < rs.size(); ++k) {
        out[k] = rs[k].get_num() * (den_lcm / rs[k].get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[k].get_mpz_t());
    }
    if (content > 1)
        for (auto& z : out) z /= content;
    return out;
}

using u64 = unsigned long long;

u64 mod_p(const Int& z, u64 p) {
    return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// monic gcd of the images mod p; inputs lowest-degree-first, trimmed
std::vector<u64> mod_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    while (!b.empty()) {
        u64 lb_inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            u64 q = mulmod(a.back(), lb_inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                u64 s = mulmod(q, b[i], p);
                a[off + i] = (a[off + i] + p - s) % p;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        a.swap(b);
    }
    u64 inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

const std::vector<u64>& gcd_primes() {
    static const std::vector<u64> ps = [] {
        std::vector<u64> v;
        Int p = Int(1) << 62;
        for (int i = 0; i < 64; ++i) {
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            v.push_back(p.get_ui());
        }
        return v;
    }();
    return ps;
}

// true iff d divides a exactly over the integers; both primitive, trimmed
bool dense_divides(const std::vector<Int>& a, const std::vector<Int>& d) {
    if (d.size() > a.size()) return false;
    std::vector<Int> r = a;
    const Int& ld = d.back();
    while (r.size() >= d.size()) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), ld.get_mpz_t());
        if (rem != 0) return false;
        size_t off = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) r[off + i] -= q * d[i];
        if (r.back() != 0) return false;
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) return true;
    }
    return r.empty();
}

void strip_content(std::vector<Int>& w) {
    Int content = 0;
    for (const auto& z : w) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    if (content > 1)
        for (auto& z : w) z /= content;
    if (w.back() < 0)
        for (auto& z : w) z = -z;
}

// modular gcd with CRT lifting and a division check; nullopt when every
// prime was unlucky (the caller falls back to the subresultant route)
std::optional<std::vector<Int>> brown_gcd(const std::vector<Int>& A, const std::vector<Int>& B) {
    Int gamma;
    mpz_gcd(gamma.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());
    std::vector<Int> cand;
    Int modulus = 0;
    for (u64 p : gcd_primes()) {
        if (mod_p(A.back(), p) == 0 || mod_p(B.back(), p) == 0) continue;
        auto red = [&](const std::vector<Int>& src) {
            std::vector<u64> r(src.size());
            for (size_t i = 0; i < src.size(); ++i) r[i] = mod_p(src[i], p);
            return r;
        };
        std::vector<u64> g = mod_gcd(red(A), red(B), p);
        if (g.size() == 1) return std::vector<Int>{Int(1)};
        u64 gp = mod_p(gamma, p);
        for (auto& c : g) c = mulmod(c, gp, p);
        if (!cand.empty() && g.size() - 1 > cand.size() - 1) continue;  // unlucky prime
        if (cand.empty() || g.size() - 1 < cand.size() - 1) {
            // first usable prime, or all previous primes were unlucky
            cand.assign(g.size(), Int(0));
            modulus = 1;
        }
        // CRT into the symmetric range
        Int pz(static_cast<unsigned long>(p));
        Int next_mod = modulus * pz;
        for (size_t i = 0; i < cand.size(); ++i) {
            Int target(static_cast<unsigned long>(g[i]));
            Int delta = target - cand[i];
            Int inv_m, step;
            if (modulus == 1) {
                cand[i] = target;
            } else {
                if (mpz_invert(inv_m.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t()) == 0)
                    fail(Err::Internal, "CRT modulus not invertible");
                step = (delta * inv_m) % pz;
                cand[i] += step * modulus;
            }
            cand[i] %= next_mod;
            if (cand[i] * 2 > next_mod) cand[i] -= next_mod;
            if (cand[i] * 2 < -next_mod) cand[i] += next_mod;
        }
        modulus = next_mod;
        std::vector<Int> probe = cand;
        strip_content(probe);
        if (dense_divides(A, probe) && dense_divides(B, probe)) return probe;
    }
    return std::nullopt;
}

// subresultant remainder sequence on dense integer vectors
std::vector<Int> dense_prs_gcd(std::vector<Int> A, std::vector<Int> B) {
    auto deg = [](const std::vector<Int>& w) { return static_cast<int>(w.size()) - 1; };
    auto trim = [](std::vector<Int>& w) {
        while (!w.empty() && w.back() == 0) w.pop_back();
    };
    if (deg(A) < deg(B)) A.swap(B);
    Int g(1), h(1);
    while (true) {
        int delta = deg(A) - deg(B);
        int db = deg(B);
        // pseudo-remainder lc(B)^(delta+1) * A mod B
        std::vector<Int> r = A;
        const Int& lb = B.back();
        int done = 0;
        trim(r);
        while (!r.empty() && deg(r) >= db) {
            Int lr = r.back();
            int dr = deg(r);
            for (auto& z : r) z *= lb;
            for (int i = 0; i <= db; ++i) r[static_cast<size_t>(dr - db + i)] -= lr * B[static_cast<size_t>(i)];
            trim(r);
            ++done;
        }
        for (; done <= delta; ++done)
            for (auto& z : r) z *= lb;
        if (r.empty()) break;
        if (deg(r) == 0) return {Int(1)};
        A.swap(B);
        Int divisor = g * [&] {
            Int hp(1);
            for (int i = 0; i < delta; ++i) hp *= h;
            return hp;
        }();
        B = std::move(r);
        for (auto& z : B) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), z.get_mpz_t(), divisor.get_mpz_t());
            if (rem != 0) fail(Err::Internal, "dense subresultant division not exact");
            z = q;
        }
        g = A.back();
        if (delta > 0) {
            Int gn(1);
            for (int i = 0; i < delta; ++i) gn *= g;
            Int hd(1);
            for (int i = 0; i < delta - 1; ++i) hd *= h;
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), gn.get_mpz_t(), hd.get_mpz_t());
            if (rem != 0) fail(Err::Internal, "dense subresultant h-update not exact");
            h = q;
        }
    }
    Int content = 0;
    for (const auto& z : B) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    if (content > 1)
        for (auto& z : B) z /= content;
    if (B.back() < 0)
        for (auto& z : B) z = -z;
    return B;
}

// single variable occurring across both polynomials, if there is exactly one
std::optional<Var> sole_var(const Poly& a, const Poly& b) {
    int found = -1;
    for (int i = 0; i < NVARS; ++i) {
        if (a.contains(Var(i)) || b.contains(Var(i))) {
            if (found >= 0) return std::nullopt;
            found = i;
        }
    }
    if (found < 0) return std::nullopt;
    return Var(found);
}

// gcd of two primitive polynomials via the subresultant remainder sequence
Poly prs_gcd(Poly a, Poly b, Var v) {
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    if (b.is_zero()) return a;
    if (b.degree(v) == 0) return Poly(1);
    Poly g(1), h(1);
    while (true) {
        int delta = a.degree(v) - b.degree(v);
        Poly r = prem(a, b, v);
        if (r.is_zero()) break;
        if (r.degree(v) == 0) return Poly(1);
        a = b;
        Poly divisor = g * h.pow(delta);
        auto next = exact_divide(r, divisor);
        if (!next) fail(Err::Internal, "subresultant division not exact");
        b = *next;
        g = a.coeff_of(v, a.degree(v));
        if (delta > 0) {
            auto hn = exact_divide(g.pow(delta), h.pow(delta - 1));
            if (!hn) fail(Err::Internal, "subresultant h-update not exact");
            h = *hn;
        }
    }
    return content_pp(b, v).second;
}

}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    if (auto uv = sole_var(a, b)) {
        std::vector<Int> da = dense_primitive(a, *uv);
        std::vector<Int> db = dense_primitive(b, *uv);
        if (!da.empty() && !db.empty()) {
            if (da.size() == 1 || db.size() == 1) return Poly(1);
            std::vector<Int> g;
            if (auto bg = brown_gcd(da, db))
                g = std::move(*bg);
            else
                g = dense_prs_gcd(std::move(da), std::move(db));
            Poly r;
            for (size_t k = 0; k < g.size(); ++k) {
                if (g[k] == 0) continue;
                Exps e{};
                e[static_cast<int>(*uv)] = static_cast<int16_t>(k);
                r.add_term(e, Rat(g[k]));
            }
            return normalize_unit(r);
        }
    }
    int v = -1;
    for (int i = NVARS - 1; i >= 0; --i) {
        if (a.contains(Var(i)) || b.contains(Var(i))) {
            v = i;
            break;
        }
    }
    if (v < 0) return Poly(1);
    Var mv = Var(v);
    if (!a.contains(mv)) return normalize_unit(poly_gcd(a, content_pp(b, mv).first));
    if (!b.contains(mv)) return normalize_unit(poly_gcd(content_pp(a, mv).first, b));
    auto [ca, pa] = content_pp(a, mv);
    auto [cb, pb] = content_pp(b, mv);
    Poly cg = poly_gcd(ca, cb);
    Poly pg = prs_gcd(pa, pb, mv);
    return normalize_unit(cg * pg);
}

Poly resultant(const Poly& p, const Poly& q, Var v) {
    int dp = p.degree(v), dq = q.degree(v);
    if (dp < 0 || dq < 0) fail(Err::Internal, "resultant of zero polynomial");
    if (dp == 0) return p.pow(dq);
    if (dq == 0) return q.pow(dp);
    int n = dp + dq;
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    auto pc = p.coeffs_in(v);
    auto qc = q.coeffs_in(v);
    auto at = [](std::map<int, Poly>& c, int k) {
        auto it = c.find(k);
        return it == c.end() ? Poly() : it->second;
    };
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k) m[r][r + dp - k] = at(pc, k);
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k) m[dq + r][r + dq - k] = at(qc, k);

    // fraction-free elimination; divisions by the previous pivot are exact
    Poly prev(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r) {
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            }
            if (swap_row < 0) return Poly();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                Poly val = m[k][k] * m[r][c] - m[r][k] * m[k][c];
                auto d = exact_divide(val, prev);
                if (!d) fail(Err::Internal, "Bareiss division not exact");
                m[r][c] = *d;
            }
            m[r][k] = Poly();
        }
        prev = m[k][k];
    }
    Poly res = m[n - 1][n - 1];
    if (sign < 0) res = -res;
    return res;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    const auto& [le, lc] = p.leading();
    Exps he;
    for (int i = 0; i < NVARS; ++i) {
        if (le[i] % 2) return std::nullopt;
        he[i] = static_cast<int16_t>(le[i] / 2);
    }
    auto sc = rat_sqrt(lc);
    if (!sc) return std::nullopt;
    Poly s = Poly::mono(he, *sc);
    Poly r = p - s * s;
    MonoLess less;
    while (!r.is_zero()) {
        const auto& [re, rc] = r.leading();
        const auto& [se, scc] = s.leading();
        Exps e;
        for (int i = 0; i < NVARS; ++i) {
            int d = re[i] - se[i];
            if (d < 0) return std::nullopt;
            e[i] = static_cast<int16_t>(d);
        }
        if (!less(e, se)) return std::nullopt;
        Poly m = Poly::mono(e, rc / (scc * 2));
        r -= (s * m) * Rat(2) + m * m;
        s += m;
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat ac = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
            first = false;
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        bool has_var = exps_total(e) > 0;
        if (ac != 1 || !has_var) {
            out << ac.get_str();
            if (has_var) out << "*";
        }
        bool inner_first = true;
        for (int i = 0; i < NVARS; ++i) {
            if (e[i] == 0) continue;
            if (!inner_first) out << "*";
            inner_first = false;
            out << var_name(Var(i));
            if (e[i] > 1) out << "^" << int(e[i]);
        }
    }
    return out.str();
}

}
