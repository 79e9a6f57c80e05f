#ifndef qwalk_group_hpp
#define qwalk_group_hpp

#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/ratfunc.hpp"

namespace qwalk {

// birational map (x, y) -> (fx, fy)
struct BirationalPair {
    RatFunc fx;
    RatFunc fy;
};

struct OrbitReport {
    // group elements when the verdict is finite; empty otherwise
    std::vector<BirationalPair> elements;
    bool finite = false;
    // group order when finite, else the bound that was exhausted
    int order = 0;
    int bound = 0;
};

BirationalPair identity_map();
BirationalPair phi_map(const StepModel& m);
BirationalPair psi_map(const StepModel& m);

// f after g
BirationalPair compose(const BirationalPair& f, const BirationalPair& g);
bool same_map(const BirationalPair& f, const BirationalPair& g);

// breadth-first closure of the identity under phi and psi; finite verdicts
// are certified by exact closure of the symbolic element set, the
// not-finite-within verdict comes from a modular point orbit of size >= bound
OrbitReport orbit(const StepModel& m, int bound = 400);

}

#endif
