#ifndef qwalk_rat_hpp
#define qwalk_rat_hpp

#include <gmpxx.h>
#include <optional>
#include <string>

namespace qwalk {

// exact rational scalar
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r = 1;
    Rat b = base;
    unsigned k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// exact square root if the rational is a perfect square
inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (sgn(r) == 0) return Rat(0);
    const Int& num = r.get_num();
    const Int& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rat(sn, sd);
}

// rising factorial (a)_n = a(a+1)...(a+n-1)
inline Rat pochhammer(const Rat& a, unsigned n) {
    Rat r = 1;
    Rat v = a;
    for (unsigned k = 0; k < n; ++k) {
        r *= v;
        v += 1;
    }
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}

#endif
