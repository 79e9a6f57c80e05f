#ifndef qwalk_symmetrize_hpp
#define qwalk_symmetrize_hpp

#include "qwalk/ratfunc.hpp"

namespace qwalk {

struct SymPair {
    RatFunc sum;
    RatFunc product;
};

// h(Y0) + h(Y1) and h(Y0)·h(Y1) for the two roots Y0, Y1 of a monic
// quadratic with Y0 + Y1 = e1 and Y0·Y1 = e2, computed via power sums
// without introducing the roots themselves; h is a rational function of y,
// e1 and e2 must not involve y
SymPair symmetrize(const RatFunc& h, const RatFunc& e1, const RatFunc& e2);

}

#endif
