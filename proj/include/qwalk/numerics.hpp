#ifndef qwalk_numerics_hpp
#define qwalk_numerics_hpp

#include <functional>
#include <vector>

#include "qwalk/hp.hpp"

namespace qwalk {

// all roots of c[0] + c[1] z + ... + c[n] z^n, c[n] != 0, by simultaneous
// iteration with Newton polishing; deterministic
std::vector<HPComplex> poly_roots(const std::vector<HPComplex>& c);

// evaluate a polynomial and its derivative at z
HPComplex poly_eval(const std::vector<HPComplex>& c, const HPComplex& z);
std::pair<HPComplex, HPComplex> poly_eval_d(const std::vector<HPComplex>& c, const HPComplex& z);

// Gauss-Legendre nodes and weights on [-1, 1], cached per (n, precision)
struct GLRule {
    std::vector<real_t> x, w;
};
const GLRule& gauss_legendre(int n);

// integral of f over [a, b] with one n-point panel
real_t integrate_gl(const std::function<real_t(const real_t&)>& f, const real_t& a,
                    const real_t& b, int n);

// node-doubling until two successive rules agree within tol; throws
// QuadratureNonConvergent when the ladder is exhausted
real_t integrate_adaptive(const std::function<real_t(const real_t&)>& f, const real_t& a,
                          const real_t& b, const real_t& tol);

// truncated Taylor jet with complex coefficients: c[k] is the z^k coefficient
struct CJet {
    std::vector<HPComplex> c;

    explicit CJet(int len) : c(static_cast<size_t>(len)) {}
    int len() const { return static_cast<int>(c.size()); }
    HPComplex& operator[](int k) { return c[static_cast<size_t>(k)]; }
    const HPComplex& operator[](int k) const { return c[static_cast<size_t>(k)]; }
};

CJet jet_add(const CJet& a, const CJet& b);
CJet jet_sub(const CJet& a, const CJet& b);
CJet jet_mul(const CJet& a, const CJet& b);
CJet jet_scale(const CJet& a, const HPComplex& s);
// multiplicative inverse; requires a[0] != 0
CJet jet_recip(const CJet& a);
// g(f(z)) for jets; requires f[0] == 0
CJet jet_compose(const CJet& g, const CJet& f);
// shifts coefficients toward lower degree by one (divide by z); requires a[0] == 0
CJet jet_downshift(const CJet& a);

}

#endif
