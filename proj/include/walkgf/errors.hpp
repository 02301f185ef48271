#pragma once

#include <stdexcept>
#include <string>

namespace walkgf {

// Base class for all library errors. `code` maps to the CLI exit code
// convention: 2 = invalid spec, 3 = precondition violation.
struct Error : std::runtime_error {
    int code;
    explicit Error(const std::string& what, int code = 3) : std::runtime_error(what), code(code) {}
};

struct ZeroLeadingTerm : Error {
    explicit ZeroLeadingTerm(const std::string& what = "series has no invertible leading term")
        : Error(what, 3) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& what) : Error(what, 2) {}
};

// A formula was asked for outside its stated regime (wrong parity, range...).
struct PreconditionViolation : Error {
    explicit PreconditionViolation(const std::string& what) : Error(what, 3) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& what = "linear system is singular") : Error(what, 3) {}
};

struct IrrationalCoefficients : Error {
    explicit IrrationalCoefficients(const std::string& what = "series coefficients are not rational")
        : Error(what, 3) {}
};

struct DiscriminantViolation : Error {
    explicit DiscriminantViolation(const std::string& what = "discriminant is not positive")
        : Error(what, 3) {}
};

struct NearDegenerateRoots : Error {
    explicit NearDegenerateRoots(const std::string& what = "numeric roots too close to separate")
        : Error(what, 3) {}
};

struct NoResidueSolution : Error {
    explicit NoResidueSolution(const std::string& what = "no residue solution exists")
        : Error(what, 3) {}
};

}  // namespace walkgf
