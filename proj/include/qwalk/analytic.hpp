#ifndef qwalk_analytic_hpp
#define qwalk_analytic_hpp

#include <utility>
#include <vector>

#include "qwalk/elliptic.hpp"
#include "qwalk/hp.hpp"
#include "qwalk/model.hpp"
#include "qwalk/numerics.hpp"
#include "qwalk/rat.hpp"

namespace qwalk {

// real branch points of the kernel discriminants at a fixed rational t,
// ordered |x1| <= |x2| < 1 < |x3| <= |x4| with x2 > 0, x3 > 0; when the
// discriminant has degree 3 the fourth point is the marker at infinity
struct BranchData {
    Rat t;
    int precision = 30;
    bool x4_infinite = false;
    bool y4_infinite = false;
    std::vector<HPComplex> x;  // x1..x4; x[3] is meaningless when x4_infinite
    std::vector<HPComplex> y;  // y1..y4 likewise
};

// branch data plus dense coefficient vectors of the kernel at exact t;
// index = degree, coefficients are exact rationals
struct BranchContext {
    StepModel model;
    Rat t;
    int precision = 30;
    BranchData branch;
    std::vector<Rat> a, b, c, d;      // coefficients in x
    std::vector<Rat> at, bt, ct, dt;  // coefficients in y
};

BranchData branch_points(const StepModel& m, const Rat& t, int precision = 30);
BranchContext make_branch_context(const StepModel& m, const Rat& t, int precision = 30);

// kernel roots in y over a numeric x, ordered |Y0| <= |Y1|; this ordering is
// the continuous determination away from the cuts, and on the cuts the two
// values form a conjugate pair
std::pair<HPComplex, HPComplex> y_branches(const BranchContext& ctx, const HPComplex& x);

// sampled curve y0([x1,x2]) together with the conjugate branch; bounded is
// false when a(x) vanishes on the cut and the curve escapes to infinity
struct CurveL {
    std::vector<HPComplex> x;
    std::vector<HPComplex> y0;
    std::vector<HPComplex> y1;
    bool bounded = true;
};

CurveL curve_L(const BranchContext& ctx, int n_samples);

struct Periods {
    HPComplex w1;  // purely imaginary, positive imaginary part
    HPComplex w2;  // real positive
    HPComplex w3;  // real positive
};

Periods periods(const BranchContext& ctx);

// everything needed to evaluate the gluing function w and its derivatives:
// the two lattices, the rational map f, and a frozen branch of the preimage
// s(y) of f(y) under the (w1, w2) Weierstrass function at a real base point
struct GluingContext {
    BranchContext bc;
    Periods per;
    EllipticLattice lat12;  // periods (w1, w2)
    EllipticLattice lat13;  // periods (w1, w3)
    bool y4_infinite = false;
    HPComplex fa, fb, y4;  // f(y) = fa + fb/(y - y4), or fa + fb*y at y4 = inf
    HPComplex y2;          // unique pole of w inside the domain
    HPComplex base_y;      // real base point for branch continuation
    HPComplex base_s;      // frozen preimage of f(base_y)
    HPComplex shift;       // -(w1 + w2)/2
    CurveL curve;          // polyline for membership tests
};

GluingContext build_gluing(const StepModel& m, const Rat& t, int precision = 30);

HPComplex f_of_y(const GluingContext& g, const HPComplex& y);
// Taylor coefficients of f at y, length len
CJet f_jet(const GluingContext& g, const HPComplex& y, int len);

// membership of y in the closure of the domain bounded by the curve;
// even-odd crossing test against the stored polyline
bool in_domain(const GluingContext& g, const HPComplex& y);

HPComplex gluing_w(const GluingContext& g, const HPComplex& y);
// Taylor coefficients of w at y: value, w'(y), w''(y)/2, ...
CJet gluing_w_jet(const GluingContext& g, const HPComplex& y, int len);

// tQ(0,y) for the decoupled infinite-group models #1..#9, assembled from the
// model's decoupling function G, a pole-matching correction in w, and a
// normalization constant fixed at a root of the kernel coefficient ct(y)
HPComplex evaluate_q0y(const GluingContext& g, const HPComplex& y);
HPComplex evaluate_q0y(const StepModel& m, const Rat& t, const HPComplex& y,
                       int precision = 30);

// (tQ(0,y), tQ(0,0)) for the reversed Kreweras model, whose ct(y) is constant;
// the constant term comes from the x = 1 specialization of the kernel identity
std::pair<HPComplex, HPComplex> reversed_kreweras_q(const GluingContext& g,
                                                    const HPComplex& y);
std::pair<HPComplex, HPComplex> reversed_kreweras_q(const Rat& t, const HPComplex& y,
                                                    int precision = 30);

}

#endif
