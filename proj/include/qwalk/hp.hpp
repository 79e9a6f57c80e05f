#ifndef qwalk_hp_hpp
#define qwalk_hp_hpp

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "qwalk/rat.hpp"

namespace qwalk {

// adjustable-precision real; precision of a value is fixed at construction
// from the scoped default
using real_t = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

// sets the default precision (decimal digits) for reals created in scope,
// restores the previous default on destruction
class ScopedPrecision {
public:
    explicit ScopedPrecision(int decimal_digits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

// guard digits added on top of a requested working precision
inline int hp_guard_digits() { return 25; }

real_t to_real(const Rat& q);
real_t hp_pi();
int current_digits();

// complex number over real_t; working precision is carried by the parts
struct HPComplex {
    real_t re, im;

    HPComplex() : re(0), im(0) {}
    HPComplex(const real_t& r) : re(r), im(0) {}
    HPComplex(const real_t& r, const real_t& i) : re(r), im(i) {}
    HPComplex(int r) : re(r), im(0) {}

    int working_precision() const { return static_cast<int>(re.precision()); }
};

inline HPComplex operator-(const HPComplex& a) { return {-a.re, -a.im}; }
inline HPComplex operator+(const HPComplex& a, const HPComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline HPComplex operator-(const HPComplex& a, const HPComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline HPComplex operator*(const HPComplex& a, const HPComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline HPComplex operator*(const HPComplex& a, const real_t& s) { return {a.re * s, a.im * s}; }
inline HPComplex operator*(const real_t& s, const HPComplex& a) { return a * s; }
inline HPComplex operator/(const HPComplex& a, const real_t& s) { return {a.re / s, a.im / s}; }

inline real_t norm(const HPComplex& z) { return z.re * z.re + z.im * z.im; }

inline HPComplex operator/(const HPComplex& a, const HPComplex& b) {
    real_t d = norm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline HPComplex& operator+=(HPComplex& a, const HPComplex& b) { return a = a + b; }
inline HPComplex& operator-=(HPComplex& a, const HPComplex& b) { return a = a - b; }
inline HPComplex& operator*=(HPComplex& a, const HPComplex& b) { return a = a * b; }
inline HPComplex& operator/=(HPComplex& a, const HPComplex& b) { return a = a / b; }

inline HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }

inline real_t abs_c(const HPComplex& z) {
    using boost::multiprecision::sqrt;
    return sqrt(norm(z));
}

HPComplex sqrt_c(const HPComplex& z);
HPComplex exp_c(const HPComplex& z);

std::string to_string(const real_t& x, int digits = 0);
std::string to_string(const HPComplex& z, int digits = 0);

}

#endif
