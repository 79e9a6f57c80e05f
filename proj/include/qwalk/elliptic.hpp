#ifndef qwalk_elliptic_hpp
#define qwalk_elliptic_hpp

#include <utility>
#include <vector>

#include "qwalk/hp.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

// period lattice Z*wa + Z*wb with reduced basis and elliptic invariants;
// laurent holds the series coefficients of wp about 0
struct EllipticLattice {
    HPComplex wa, wb;
    HPComplex b1, b2;
    HPComplex g2, g3;
    std::vector<HPComplex> e;
    std::vector<HPComplex> laurent;
};

EllipticLattice make_lattice(const HPComplex& wa, const HPComplex& wb);

// conventional invariants g2 = 60 sum' lambda^-4, g3 = 140 sum' lambda^-6;
// the unnormalized lattice sums are g2/60 and g3/140
std::pair<HPComplex, HPComplex> eisenstein_invariants(const HPComplex& wa, const HPComplex& wb);

// representative of z in the centered fundamental cell, then nudged to the
// shortest equivalent
HPComplex reduce_mod_lattice(const EllipticLattice& lat, const HPComplex& z);

// value, and (value, derivative), of Weierstrass wp
HPComplex weierstrass_p(const EllipticLattice& lat, const HPComplex& z);
std::pair<HPComplex, HPComplex> weierstrass_p_pair(const EllipticLattice& lat, const HPComplex& z);

// Taylor jet of wp about z0 (coefficient k multiplies (z-z0)^k), via the
// defining differential equation
CJet weierstrass_p_taylor(const EllipticLattice& lat, const HPComplex& z0, int len);

// Carlson symmetric integral R_F
HPComplex rf_carlson(HPComplex x, HPComplex y, HPComplex z);

// a preimage of v under wp, folded to the canonical half cell (Im >= 0)
HPComplex weierstrass_p_inv(const EllipticLattice& lat, const HPComplex& v);

// convenience forms over explicit periods; the passed invariants must agree
// with the ones the periods generate and are cross-checked loosely
HPComplex weierstrass_p(const HPComplex& z, const HPComplex& g2, const HPComplex& g3,
                        const HPComplex& wa, const HPComplex& wb);
HPComplex weierstrass_p_inv(const HPComplex& v, const HPComplex& g2, const HPComplex& g3,
                            const HPComplex& wa, const HPComplex& wb);

}

#endif
