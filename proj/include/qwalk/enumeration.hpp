#ifndef qwalk_enumeration_hpp
#define qwalk_enumeration_hpp

#include <utility>
#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

// dense table of weighted walk counts q(i,j;n); entries are rationals, or
// polynomials in lam for symbolically weighted models
struct CountTable {
    int n_max = 0;
    int side = 0;
    std::pair<int, int> start{0, 0};
    std::vector<Poly> counts;

    const Poly& at(int i, int j, int n) const;
};

CountTable count_walks(const StepModel& m, int n_max, std::pair<int, int> start = {0, 0});

// truncated generating function: coeff[n] is the t^n coefficient, a
// polynomial in x and y of total degree <= n (from the origin)
struct QSeries {
    int N = 0;
    std::vector<Poly> coeff;
};

QSeries q_series(const StepModel& m, int N);

// R(x) = K(x,0) Q(x,0) and S(y) = K(0,y) Q(0,y) as series in t
Series boundary_r(const StepModel& m, const QSeries& qs);
Series boundary_s(const StepModel& m, const QSeries& qs);

struct FunctionalEquationReport {
    bool ok = false;
    // K Q - R - S + R(0) + xy with all powers t^n, n <= N; zero when ok
    Poly residual;
};

FunctionalEquationReport check_functional_equation(const StepModel& m, int N);

// closed form for Gessel walks returning to the origin in 2n steps
Rat gessel_closed_form(int n);

}

#endif
