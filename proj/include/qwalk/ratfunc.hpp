#ifndef qwalk_ratfunc_hpp
#define qwalk_ratfunc_hpp

#include <array>
#include <string>

#include "qwalk/error.hpp"
#include "qwalk/poly.hpp"

namespace qwalk {

// rational function num/den in canonical form: gcd(num, den) is a unit,
// den has coprime integer coefficients with positive leading one,
// and the zero function is stored as 0/1
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly(1)) {}
    RatFunc(long n) : num_(Poly(n)), den_(Poly(1)) {}
    RatFunc(const Rat& r) : num_(Poly(r)), den_(Poly(1)) {}
    RatFunc(const Poly& n) : num_(n), den_(Poly(1)) {}
    RatFunc(const Poly& n, const Poly& d);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const;
    bool is_polynomial() const { return den_.is_constant(); }
    // numerator rescaled by the constant denominator; requires is_polynomial()
    Poly as_polynomial() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);

    RatFunc derivative(Var v) const;
    RatFunc subst(Var v, const RatFunc& g) const;
    RatFunc pow(long k) const;

    template <typename F>
    F eval(const std::array<F, NVARS>& vals) const {
        return num_.eval(vals) / den_.eval(vals);
    }

    std::string str() const;

private:
    void reduce();

    Poly num_;
    Poly den_;
};

// exact square root in the rational function field, if one exists;
// the result's numerator has positive leading coefficient
std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f);

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);
bool operator==(const RatFunc& a, const RatFunc& b);
bool operator!=(const RatFunc& a, const RatFunc& b);

}

#endif
