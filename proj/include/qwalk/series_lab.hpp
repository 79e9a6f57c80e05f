#ifndef qwalk_series_lab_hpp
#define qwalk_series_lab_hpp

#include "qwalk/model.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

// how x is specialized before solving K(x,y) = 0 for y as a series in t
enum class XSpec {
    generic,             // x stays symbolic; coefficients are RatFunc in x
    gessel_substitution  // x = t + t^2(u + 1/u); coefficients are RatFunc in u
};

// the two kernel roots as truncated Laurent series in t; Y0 is the branch
// with the strictly larger t-valuation (the one that is O(t)-small), and on
// valuation ties the minus branch of the canonical square root
struct BranchSeries {
    Series x;  // the substituted x itself, exact as a series in t
    Series Y0;
    Series Y1;
};

// roots of K(x,y) = 0 via the quadratic formula with a series square root,
// truncated at order N; the substitution is tailored to the Gessel kernel
// and may fail to split elsewhere (NonSquareLeadingTerm)
BranchSeries kernel_root_series(const StepModel& m, XSpec spec, int N);

// I(Y0) - I(Y1) for I(y) = 1/(t(1+y)(1+1/y)) + t(1+y)(1+1/y)
Series gessel_invariant_residual(const BranchSeries& br);

// x(Y0 - Y1) - 1/(t(1+Y1)) + 1/(t(1+Y0))
Series gessel_decoupling_residual(const BranchSeries& br);

// substitute yv for y inside every coefficient of f, e.g. S(Y0) from S(y);
// coefficients must be polynomial in y up to a y-free denominator
Series compose_y(const Series& f, const Series& yv, int ord);

// verify the named identity through t^N and return the verified order;
// throws Internal if a nonzero coefficient appears below order N
int certify_gessel_invariant(int N = 20);
int certify_gessel_decoupling(int N = 20);

struct CubicIdentityReport {
    Series a, b, c, d;       // series in t, free of y and u
    bool ok = false;
    int residual_order = 0;  // verified vanishing order, or first failing one
};

// check (J(y) - J(0)) I(y) = a J^3 + b J^2 + c J + d as a series identity
// in t with rational-in-y coefficients, where J(y) = S(y) + 1/(t(1+y)) and
// S comes from enumeration; a, b, c, d follow the boundary expansions
//   a = -t, b = 2 + t S(0), c = -S(0) + 2 S'(-1) - 1/t,
//   d = -2 S(0) S'(-1) - 3 S'(-1)/t + S''(-1)/t
CubicIdentityReport certify_cubic_identity(int N = 20);

// the unique series with constant term 1 satisfying
// Z^2 = 1 + 256 t^2 Z^6 / (Z^2 + 3)^3, truncated at order N
Series z_series(int N);

}

#endif
