#ifndef qwalk_series_hpp
#define qwalk_series_hpp

#include <map>
#include <string>
#include <vector>

#include "qwalk/ratfunc.hpp"

namespace qwalk {

// truncation order meaning "exact, no truncation error"
constexpr int series_exact_ord = 1 << 28;

// Laurent series in one distinguished variable T with RatFunc coefficients.
// Stored window covers T^lo .. T^(lo+coeffs.size()-1); positions outside the
// window but below ord are exactly zero; the series is known modulo T^ord.
// A zero series has an empty window and lo == ord.
class Series {
public:
    Series() : lo_(series_exact_ord), ord_(series_exact_ord) {}
    Series(const Rat& c);
    Series(long c) : Series(Rat(c)) {}
    Series(const RatFunc& c);
    // the series variable itself, exactly
    static Series sym_T();
    // a single coefficient at exponent k, known exactly
    static Series mono(int k, const RatFunc& c);
    static Series zero(int ord);

    int lo() const { return lo_; }
    int ord() const { return ord_; }
    bool exact() const { return ord_ >= series_exact_ord; }
    bool is_zero() const { return c_.empty(); }
    // valuation of a nonzero series
    int valuation() const;
    const std::vector<RatFunc>& window() const { return c_; }
    RatFunc coeff(int k) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);

    Series truncated(int ord) const;
    Series shifted(int k) const;
    Series pow(long e) const;
    // coefficient-wise map, e.g. a derivative or substitution in a symbol
    template <typename F>
    Series map_coeffs(F f) const {
        Series r = *this;
        for (auto& cc : r.c_) cc = f(cc);
        r.trim();
        return r;
    }

    std::string str() const;

    // raw constructor: coefficients for T^lo .. T^(lo+c.size()-1), mod T^ord
    Series(int lo, int ord, std::vector<RatFunc> c);

private:
    void trim();

    int lo_;
    int ord_;
    std::vector<RatFunc> c_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(const Series& a, const RatFunc& c);
// requires b nonzero; both operands exact is an error unless the division is avoidable
Series operator/(const Series& a, const Series& b);
// even valuation and square leading coefficient required
Series series_sqrt(const Series& a);

// evaluate p as a series in series_var to order ord; series_var maps to T,
// variables in assign map to their series, all others stay symbolic
Series series_of_poly(const Poly& p, Var series_var, int ord,
                      const std::map<Var, Series>& assign = {});
Series series_of_ratfunc(const RatFunc& f, Var series_var, int ord,
                         const std::map<Var, Series>& assign = {});

}

#endif
