#ifndef qwalk_model_hpp
#define qwalk_model_hpp

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qwalk/poly.hpp"

namespace qwalk {

// small-step model: weighted steps in {-1,0,1}^2 minus the origin;
// weights are positive rationals or positive polynomials in lam
struct StepModel {
    std::string name;
    std::map<std::pair<int, int>, Poly> steps;

    bool has_symbolic_weights() const;
    // canonical identity independent of the name
    std::string canonical_key() const;
};

struct Kernel {
    Poly K;            // xy(t*sum of weighted steps - 1)
    Poly a, b, c;      // K = a(x) y^2 + b(x) y + c(x)
    Poly at, bt, ct;   // K = at(y) x^2 + bt(y) x + ct(y)
    Poly d;            // b^2 - 4ac
    Poly dt;           // bt^2 - 4*at*ct
};

StepModel make_model(const std::string& name,
                     const std::vector<std::tuple<int, int, Poly>>& steps);

Kernel build_kernel(const StepModel& m);

bool is_singular(const StepModel& m);
bool is_vertically_symmetric(const StepModel& m);

StepModel diagonal_reflection(const StepModel& m);
StepModel vertical_reflection(const StepModel& m);

// named models: kreweras, reversed-kreweras, double-kreweras, gessel, simple,
// weighted-1..4, #1..#9, table3-1/table3-4/table3-6, candidate-1..6,
// vsym-1..16
std::vector<StepModel> catalog();
std::optional<StepModel> catalog_lookup(const std::string& name);

// every nonempty unweighted step set, 255 models
std::vector<StepModel> all_step_sets();

// {"name": ..., "steps": [[i, j, "weight"], ...]}
StepModel load_model_json(const std::string& text);

}

#endif
