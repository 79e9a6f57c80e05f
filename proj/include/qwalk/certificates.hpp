#ifndef qwalk_certificates_hpp
#define qwalk_certificates_hpp

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/ratfunc.hpp"

namespace qwalk {

// pair of rational first integrals: I1 in x, I2 in y, equal on the kernel curve
struct InvariantPair {
    RatFunc I1;
    RatFunc I2;
};

// xy = F(x) + G(y) on the kernel curve
struct DecouplingPair {
    RatFunc F;
    RatFunc G;
};

// finite search space for decoupling candidates: monomials y^k with
// lo <= k <= hi plus poles at given y-values up to given multiplicities;
// t_degree_bound restricts coefficient degrees when positive (unused by the
// dense solver, kept for interface stability)
struct Ansatz {
    int lo = 0;
    int hi = 0;
    std::vector<std::pair<Rat, int>> poles;
    int t_degree_bound = -1;
};

// exact check that I1(x) - I2(y) vanishes on K = 0
bool verify_invariant(const StepModel& m, const InvariantPair& p);

// independent algorithm for the same predicate, via branch symmetrization
bool verify_invariant_via_discriminant(const StepModel& m, const InvariantPair& p);

// I1(x) = I2(Y0) = I2(Y1) when I2 takes equal values on both kernel branches
RatFunc induced_x_invariant(const StepModel& m, const RatFunc& I2);

// exact check that xy - F(x) - G(y) vanishes on K = 0
bool verify_decoupling(const StepModel& m, const DecouplingPair& p);

// F(x) = x Y0 - G(Y0) symmetrized; absent when no such F exists
std::optional<RatFunc> F_from_G(const StepModel& m, const RatFunc& G);

// linear search for a verified decoupling pair within the ansatz; the
// constant term of G is fixed to zero (gauge choice)
std::optional<DecouplingPair> search_decoupling(const StepModel& m, const Ansatz& a);

enum class ReflectKind { diagonal, vertical };

// transport an invariant pair to the reflected model
InvariantPair reflect_certificates(const InvariantPair& p, ReflectKind kind);

struct CertEntry {
    std::optional<InvariantPair> invariant;
    std::optional<DecouplingPair> decoupling;
};

// verified certificates for the named catalog models
const std::map<std::string, CertEntry>& builtin_certificate_table();

// text format: lines "model <name>", "I1 <expr>", "I2 <expr>", "F <expr>",
// "G <expr>"; blank lines and lines starting with # are ignored
struct CertificateFile {
    std::string model;
    std::optional<RatFunc> I1, I2, F, G;
};

CertificateFile parse_certificate_file(const std::string& text);

}

#endif
