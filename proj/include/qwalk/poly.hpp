#ifndef qwalk_poly_hpp
#define qwalk_poly_hpp

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/rat.hpp"

namespace qwalk {

// variables of the ambient polynomial ring, in fixed order
enum class Var : int { t = 0, x = 1, y = 2, u = 3, lam = 4 };

constexpr int NVARS = 5;

const char* var_name(Var v);

using Exps = std::array<int16_t, NVARS>;

inline int exps_total(const Exps& e) {
    int s = 0;
    for (int i = 0; i < NVARS; ++i) s += e[i];
    return s;
}

// graded order: total degree first, then lexicographic with lam most significant
struct MonoLess {
    bool operator()(const Exps& a, const Exps& b) const {
        int ta = exps_total(a), tb = exps_total(b);
        if (ta != tb) return ta < tb;
        for (int i = NVARS - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class Poly {
public:
    using Terms = std::map<Exps, Rat, MonoLess>;

    Poly() = default;
    Poly(const Rat& c);
    Poly(long c);
    static Poly var(Var v, int e = 1);
    static Poly mono(const Exps& e, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;
    int total_degree() const;
    int degree(Var v) const;
    bool contains(Var v) const;
    size_t n_terms() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    // leading term in the graded order; polynomial must be nonzero
    const std::pair<const Exps, Rat>& leading() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& c);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return terms_ != o.terms_; }
    // arbitrary strict order, for use as container key
    bool operator<(const Poly& o) const;

    Poly coeff_of(Var v, int k) const;
    std::map<int, Poly> coeffs_in(Var v) const;
    Rat coeff(const Exps& e) const;

    Poly derivative(Var v) const;
    Poly subst(Var v, const Poly& p) const;
    Poly swap_vars(Var a, Var b) const;
    Poly pow(unsigned e) const;

    // numeric or symbolic evaluation; F needs ring ops and conv from Rat
    template <class F>
    F eval(const std::array<F, NVARS>& vals) const {
        F acc = F(0);
        for (const auto& [e, c] : terms_) {
            F term = F(c);
            for (int i = 0; i < NVARS; ++i)
                for (int k = 0; k < e[i]; ++k) term = term * vals[i];
            acc = acc + term;
        }
        return acc;
    }

    std::string str() const;

    void add_term(const Exps& e, const Rat& c);

private:
    Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const Rat& c);
Poly operator*(const Rat& c, Poly a);

// quotient when den divides num exactly, otherwise nullopt
std::optional<Poly> exact_divide(const Poly& num, const Poly& den);

// scale by a rational so coefficients are coprime integers with positive leading one
Poly normalize_unit(const Poly& p);

Poly poly_gcd(const Poly& a, const Poly& b);

Poly resultant(const Poly& p, const Poly& q, Var v);

// exact square root in the polynomial ring, if one exists
std::optional<Poly> poly_sqrt(const Poly& p);

}

#endif
