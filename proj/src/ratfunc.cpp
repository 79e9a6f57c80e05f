#include "qwalk/ratfunc.hpp"

namespace qwalk {

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
    if (den_.is_zero()) fail(Err::ZeroDenominator, "rational function with zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.is_constant()) {
        Rat c = den_.constant_value();
        if (c != 1) {
            num_ *= Rat(1) / c;
            den_ = Poly(1);
        }
        return;
    }
    if (den_.n_terms() == 1) {
        // monomial denominator: cancel the common monomial by exponent shifts
        const auto& [de, dc] = *den_.terms().begin();
        Exps shift = de;
        for (const auto& [e, c] : num_.terms())
            for (int i = 0; i < NVARS; ++i)
                if (e[i] < shift[i]) shift[i] = e[i];
        Poly n, d;
        for (const auto& [e, c] : num_.terms()) {
            Exps f = e;
            for (int i = 0; i < NVARS; ++i) f[i] -= shift[i];
            n.add_term(f, c / dc);
        }
        Exps f = de;
        for (int i = 0; i < NVARS; ++i) f[i] -= shift[i];
        d.add_term(f, Rat(1));
        num_ = n;
        den_ = d;
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
    }
    Poly dn = normalize_unit(den_);
    Rat scale = dn.leading().second / den_.leading().second;
    num_ *= scale;
    den_ = dn;
}

Rat RatFunc::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

Poly RatFunc::as_polynomial() const {
    if (!is_polynomial()) fail(Err::Internal, "as_polynomial on a proper fraction");
    Poly r = num_;
    r *= Rat(1) / den_.constant_value();
    return r;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) fail(Err::ZeroDenominator, "division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    reduce();
    return *this;
}

RatFunc RatFunc::derivative(Var v) const {
    Poly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    Poly d = den_ * den_;
    return RatFunc(n, d);
}

RatFunc RatFunc::subst(Var v, const RatFunc& g) const {
    // clear g's denominator: num_(v -> gn/gd) * gd^deg over the same for den_
    int dn = num_.degree(v);
    int dd = den_.degree(v);
    int m = dn > dd ? dn : dd;
    auto lift = [&](const Poly& p, int degp) {
        // sum over k of coeff_k * gn^k * gd^(m-k)
        auto by_deg = p.coeffs_in(v);
        Poly acc;
        for (const auto& [k, c] : by_deg) {
            Poly term = c;
            Poly gp = g.num().pow(k) * g.den().pow(m - k);
            acc += term * gp;
        }
        (void)degp;
        return acc;
    };
    Poly n = lift(num_, dn);
    Poly d = lift(den_, dd);
    if (d.is_zero()) fail(Err::ZeroDenominator, "substitution makes denominator vanish");
    return RatFunc(n, d);
}

RatFunc RatFunc::pow(long k) const {
    if (k < 0) {
        if (is_zero()) fail(Err::ZeroDenominator, "negative power of zero");
        RatFunc inv(den_, num_);
        return inv.pow(-k);
    }
    RatFunc r(1);
    RatFunc base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::string RatFunc::str() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
    if (f.is_zero()) return RatFunc();
    // split the numerator into unit * primitive part; both must be squares
    Poly np = normalize_unit(f.num());
    Rat unit = f.num().leading().second / np.leading().second;
    auto us = rat_sqrt(unit);
    if (!us) return std::nullopt;
    auto ns = poly_sqrt(np);
    if (!ns) return std::nullopt;
    auto ds = poly_sqrt(f.den());
    if (!ds) return std::nullopt;
    Poly n = *ns;
    n *= *us;
    return RatFunc(n, *ds);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { RatFunc r = a; r += b; return r; }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { RatFunc r = a; r -= b; return r; }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { RatFunc r = a; r *= b; return r; }
RatFunc operator/(const RatFunc& a, const RatFunc& b) { RatFunc r = a; r /= b; return r; }

bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num() == b.num() && a.den() == b.den();
}

bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

}
