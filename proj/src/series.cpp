#include "qwalk/series.hpp"

#include <algorithm>

namespace qwalk {

namespace {

int sat_ord(long v) {
    return v >= (series_exact_ord >> 1) ? series_exact_ord : static_cast<int>(v);
}

}

Series::Series(const Rat& c) : lo_(0), ord_(series_exact_ord), c_{RatFunc(c)} {
    trim();
}

Series::Series(const RatFunc& c) : lo_(0), ord_(series_exact_ord), c_{c} {
    trim();
}

Series::Series(int lo, int ord, std::vector<RatFunc> c) : lo_(lo), ord_(ord), c_(std::move(c)) {
    if (lo_ + static_cast<long>(c_.size()) > ord_) fail(Err::Internal, "series window exceeds order");
    trim();
}

Series Series::sym_T() {
    return Series(1, series_exact_ord, {RatFunc(1)});
}

Series Series::mono(int k, const RatFunc& c) {
    return Series(k, series_exact_ord, {c});
}

Series Series::zero(int ord) {
    return Series(ord, ord, {});
}

void Series::trim() {
    size_t a = 0;
    while (a < c_.size() && c_[a].is_zero()) ++a;
    size_t b = c_.size();
    while (b > a && c_[b - 1].is_zero()) --b;
    if (a == b) {
        c_.clear();
        lo_ = ord_;
        return;
    }
    if (a > 0 || b < c_.size()) {
        std::vector<RatFunc> nc(c_.begin() + a, c_.begin() + b);
        c_ = std::move(nc);
        lo_ += static_cast<int>(a);
    }
}

int Series::valuation() const {
    if (is_zero()) fail(Err::Internal, "valuation of zero series");
    return lo_;
}

RatFunc Series::coeff(int k) const {
    if (k >= ord_) fail(Err::Internal, "series coefficient beyond truncation order");
    if (k < lo_ || k >= lo_ + static_cast<int>(c_.size())) return RatFunc();
    return c_[k - lo_];
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& cc : r.c_) cc = -cc;
    return r;
}

Series& Series::operator+=(const Series& o) {
    *this = *this + o;
    return *this;
}

Series& Series::operator-=(const Series& o) {
    *this = *this - o;
    return *this;
}

Series Series::truncated(int ord) const {
    if (ord >= ord_) return *this;
    Series r = *this;
    r.ord_ = ord;
    long keep = static_cast<long>(ord) - r.lo_;
    if (keep <= 0) {
        r.c_.clear();
        r.lo_ = ord;
    } else if (keep < static_cast<long>(r.c_.size())) {
        r.c_.resize(static_cast<size_t>(keep));
    }
    r.trim();
    return r;
}

Series Series::shifted(int k) const {
    Series r = *this;
    r.lo_ = sat_ord(static_cast<long>(r.lo_) + k);
    r.ord_ = sat_ord(static_cast<long>(r.ord_) + k);
    return r;
}

Series Series::pow(long e) const {
    if (e < 0) {
        Series one(Rat(1));
        return one / this->pow(-e);
    }
    Series r(Rat(1));
    Series base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Series operator+(const Series& a, const Series& b) {
    int ord = std::min(a.ord(), b.ord());
    if (a.is_zero()) return b.truncated(ord);
    if (b.is_zero()) return a.truncated(ord);
    int lo = std::min(a.lo(), b.lo());
    long hi = std::min<long>(ord, std::max<long>(a.lo() + a.window().size(), b.lo() + b.window().size()));
    if (hi <= lo) return Series::zero(ord);
    std::vector<RatFunc> c(static_cast<size_t>(hi - lo));
    for (size_t i = 0; i < a.window().size(); ++i) {
        long k = a.lo() + static_cast<long>(i);
        if (k < hi) c[k - lo] = c[k - lo] + a.window()[i];
    }
    for (size_t i = 0; i < b.window().size(); ++i) {
        long k = b.lo() + static_cast<long>(i);
        if (k < hi) c[k - lo] = c[k - lo] + b.window()[i];
    }
    return Series(lo, ord, std::move(c));
}

Series operator-(const Series& a, const Series& b) {
    return a + (-b);
}

Series operator*(const Series& a, const Series& b) {
    int ord;
    if (a.exact() && b.exact()) {
        ord = series_exact_ord;
    } else if (a.exact()) {
        ord = a.is_zero() ? b.ord() : sat_ord(static_cast<long>(a.lo()) + b.ord());
    } else if (b.exact()) {
        ord = b.is_zero() ? a.ord() : sat_ord(static_cast<long>(b.lo()) + a.ord());
    } else {
        ord = sat_ord(std::min(static_cast<long>(a.lo()) + b.ord(), static_cast<long>(b.lo()) + a.ord()));
    }
    if (a.is_zero() || b.is_zero()) {
        if (a.exact() && b.exact()) return Series();
        return Series::zero(ord);
    }
    long lo = static_cast<long>(a.lo()) + b.lo();
    long hi = std::min<long>(ord, lo + static_cast<long>(a.window().size()) + static_cast<long>(b.window().size()) - 1);
    if (hi <= lo) return Series::zero(ord);
    std::vector<RatFunc> c(static_cast<size_t>(hi - lo));
    for (size_t i = 0; i < a.window().size(); ++i) {
        if (a.window()[i].is_zero()) continue;
        for (size_t j = 0; j < b.window().size(); ++j) {
            long k = lo + static_cast<long>(i) + static_cast<long>(j);
            if (k >= hi) break;
            c[k - lo] = c[k - lo] + a.window()[i] * b.window()[j];
        }
    }
    return Series(static_cast<int>(lo), ord, std::move(c));
}

Series operator*(const Series& a, const RatFunc& c) {
    return a * Series(c);
}

Series operator/(const Series& a, const Series& b) {
    if (b.is_zero()) fail(Err::NonInvertibleLeadingTerm, "division by a series with no known nonzero term");
    int lb = b.lo();
    if (b.exact() && b.window().size() == 1) {
        // monomial divisor: exact shift and rescale
        const RatFunc& b0 = b.window()[0];
        return a.shifted(-lb) * (RatFunc(1) / b0);
    }
    if (a.is_zero()) {
        long ord_l = a.exact() ? series_exact_ord : static_cast<long>(a.ord()) - lb;
        return Series::zero(sat_ord(ord_l));
    }
    long la = a.lo();
    long qo1 = a.exact() ? series_exact_ord : static_cast<long>(a.ord()) - lb;
    long qo2 = b.exact() ? series_exact_ord : la - 2L * lb + b.ord();
    int ord = sat_ord(std::min(qo1, qo2));
    if (ord >= series_exact_ord)
        fail(Err::Internal, "series division requires a truncation order; truncate an operand first");
    long qlo = la - lb;
    long n = ord - qlo;
    if (n <= 0) return Series::zero(ord);
    // long division against b shifted to valuation 0
    std::vector<RatFunc> r(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        int pos = static_cast<int>(la + k);
        r[static_cast<size_t>(k)] = pos < a.ord() ? a.coeff(pos) : RatFunc();
    }
    const RatFunc& b0 = b.window()[0];
    std::vector<RatFunc> q(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        RatFunc qk = r[static_cast<size_t>(k)] / b0;
        q[static_cast<size_t>(k)] = qk;
        if (qk.is_zero()) continue;
        for (size_t j = 1; j < b.window().size(); ++j) {
            long idx = k + static_cast<long>(j);
            if (idx >= n) break;
            r[static_cast<size_t>(idx)] = r[static_cast<size_t>(idx)] - qk * b.window()[j];
        }
    }
    return Series(static_cast<int>(qlo), ord, std::move(q));
}

Series series_sqrt(const Series& a) {
    if (a.is_zero()) {
        if (a.exact()) return Series();
        fail(Err::NonSquareLeadingTerm, "square root of a series with no known nonzero term");
    }
    if (a.exact() && a.window().size() == 1 && a.lo() % 2 == 0) {
        auto s0 = ratfunc_sqrt(a.window()[0]);
        if (!s0) fail(Err::NonSquareLeadingTerm, "coefficient is not a square: " + a.window()[0].str());
        return Series::mono(a.lo() / 2, *s0);
    }
    if (a.exact())
        fail(Err::Internal, "series square root requires a truncation order; truncate first");
    if (a.lo() % 2 != 0)
        fail(Err::NonSquareLeadingTerm, "square root needs even valuation, got " + std::to_string(a.lo()));
    auto s0 = ratfunc_sqrt(a.window()[0]);
    if (!s0)
        fail(Err::NonSquareLeadingTerm, "leading coefficient is not a square: " + a.window()[0].str());
    int v = a.lo() / 2;
    int ord = a.ord() - v;
    long n = static_cast<long>(ord) - v;
    std::vector<RatFunc> s(static_cast<size_t>(n));
    s[0] = *s0;
    RatFunc two_s0 = s[0] + s[0];
    for (long k = 1; k < n; ++k) {
        int pos = a.lo() + static_cast<int>(k);
        RatFunc ak = pos < a.ord() ? a.coeff(pos) : RatFunc();
        RatFunc acc = ak;
        for (long j = 1; j < k; ++j)
            acc = acc - s[static_cast<size_t>(j)] * s[static_cast<size_t>(k - j)];
        s[static_cast<size_t>(k)] = acc / two_s0;
    }
    return Series(v, ord, std::move(s));
}

Series series_of_poly(const Poly& p, Var series_var, int ord,
                      const std::map<Var, Series>& assign) {
    std::array<Series, NVARS> vals;
    for (int i = 0; i < NVARS; ++i) {
        Var v = static_cast<Var>(i);
        if (v == series_var) {
            vals[i] = Series::sym_T();
        } else if (auto it = assign.find(v); it != assign.end()) {
            for (const auto& cc : it->second.window())
                if (cc.num().contains(series_var) || cc.den().contains(series_var))
                    fail(Err::BadInput, "assigned series coefficient contains the series variable");
            // keep the assignment at full precision: truncating here would cost
            // accuracy when the series has negative valuation, and the result
            // is truncated at the end anyway
            vals[i] = it->second;
        } else {
            vals[i] = Series(RatFunc(Poly::var(v)));
        }
    }
    return p.eval(vals).truncated(ord);
}

Series series_of_ratfunc(const RatFunc& f, Var series_var, int ord,
                         const std::map<Var, Series>& assign) {
    Series n = series_of_poly(f.num(), series_var, ord + 64, assign);
    Series d = series_of_poly(f.den(), series_var, ord + 64, assign);
    if (d.is_zero()) fail(Err::ZeroDenominator, "denominator vanishes to the working order");
    int lb = d.lo();
    long extra = std::max<long>(0, lb) * 2 + std::max<long>(0, -static_cast<long>(n.is_zero() ? 0 : n.lo()));
    int work = sat_ord(static_cast<long>(ord) + extra + std::abs(lb) + 1);
    n = series_of_poly(f.num(), series_var, work, assign);
    d = series_of_poly(f.den(), series_var, work, assign);
    return (n / d).truncated(ord);
}

std::string Series::str() const {
    if (is_zero()) return exact() ? "0" : "O(T^" + std::to_string(ord_) + ")";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[i].str() + ")*T^" + std::to_string(lo_ + static_cast<int>(i));
    }
    if (!exact()) s += " + O(T^" + std::to_string(ord_) + ")";
    return s;
}

}
