#ifndef qwalk_error_hpp
#define qwalk_error_hpp

#include <stdexcept>
#include <string>

namespace qwalk {

enum class Err {
    ZeroDenominator,
    NonInvertibleLeadingTerm,
    NonSquareLeadingTerm,
    BranchPole,
    DegenerateKernel,
    NotAnInvariant,
    TOutOfRange,
    ClassificationFailed,
    DegenerateQuadratic,
    QuadratureNonConvergent,
    DegenerateLattice,
    LatticeReductionFailed,
    IntegralNonConvergent,
    PoleAtY4,
    OutsideDomain,
    AtPole,
    PoleCollision,
    BadInput,
    Internal,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::ZeroDenominator: return "ZeroDenominator";
        case Err::NonInvertibleLeadingTerm: return "NonInvertibleLeadingTerm";
        case Err::NonSquareLeadingTerm: return "NonSquareLeadingTerm";
        case Err::BranchPole: return "BranchPole";
        case Err::DegenerateKernel: return "DegenerateKernel";
        case Err::NotAnInvariant: return "NotAnInvariant";
        case Err::TOutOfRange: return "TOutOfRange";
        case Err::ClassificationFailed: return "ClassificationFailed";
        case Err::DegenerateQuadratic: return "DegenerateQuadratic";
        case Err::QuadratureNonConvergent: return "QuadratureNonConvergent";
        case Err::DegenerateLattice: return "DegenerateLattice";
        case Err::LatticeReductionFailed: return "LatticeReductionFailed";
        case Err::IntegralNonConvergent: return "IntegralNonConvergent";
        case Err::PoleAtY4: return "PoleAtY4";
        case Err::OutsideDomain: return "OutsideDomain";
        case Err::AtPole: return "AtPole";
        case Err::PoleCollision: return "PoleCollision";
        case Err::BadInput: return "BadInput";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
    throw Error(code, what);
}

}

#endif
