#include "qwalk/hp.hpp"

#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

ScopedPrecision::ScopedPrecision(int decimal_digits) {
    if (decimal_digits < 15) fail(Err::BadInput, "precision below 15 digits");
    saved_ = real_t::default_precision();
    real_t::default_precision(static_cast<unsigned>(decimal_digits));
}

ScopedPrecision::~ScopedPrecision() { real_t::default_precision(saved_); }

int current_digits() { return static_cast<int>(real_t::default_precision()); }

real_t to_real(const Rat& q) {
    real_t n(q.get_num().get_str());
    real_t d(q.get_den().get_str());
    return n / d;
}

real_t hp_pi() {
    real_t p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

HPComplex sqrt_c(const HPComplex& z) {
    using boost::multiprecision::sqrt;
    if (z.im == 0) {
        if (z.re >= 0) return {sqrt(z.re), real_t(0)};
        return {real_t(0), sqrt(-z.re)};
    }
    real_t r = abs_c(z);
    real_t w = sqrt((r + boost::multiprecision::abs(z.re)) / 2);
    if (z.re >= 0) return {w, z.im / (2 * w)};
    real_t t = boost::multiprecision::abs(z.im) / (2 * w);
    if (z.im >= 0) return {t, w};
    return {t, -w};
}

HPComplex exp_c(const HPComplex& z) {
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    real_t m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

std::string to_string(const real_t& x, int digits) {
    std::ostringstream os;
    os.precision(digits > 0 ? digits : static_cast<int>(x.precision()));
    os << x;
    return os.str();
}

std::string to_string(const HPComplex& z, int digits) {
    std::string s = to_string(z.re, digits);
    if (z.im >= 0) return s + " + " + to_string(z.im, digits) + "i";
    return s + " - " + to_string(-z.im, digits) + "i";
}

}
