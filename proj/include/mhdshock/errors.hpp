#pragma once

#include <stdexcept>
#include <string>

namespace mhdshock {

enum class ErrorKind {
    Domain,           // argument outside the operation's domain
    NoShock,          // parameters admit no Lax shock of the requested type
    Converge,         // iteration failed to converge
    SingularA,        // quasilinear matrix A numerically singular (characteristic point)
    NeutralSplitting, // eigenvalue of a Lopatinski matrix too close to the imaginary axis
    DimMismatch,      // invariant-subspace dimension differs from the Lax count
    ZeroJump,         // jump vector too small to normalize
    AxisUnresolved,   // axis limit did not stabilize under eps-refinement
    LeftHalfPlane,    // root iterate left the closed right half-plane
    NoBracket,        // bisection bracket contains no sign change
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
        case ErrorKind::Domain: return "Domain";
        case ErrorKind::NoShock: return "NoShock";
        case ErrorKind::Converge: return "Converge";
        case ErrorKind::SingularA: return "SingularA";
        case ErrorKind::NeutralSplitting: return "NeutralSplitting";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::ZeroJump: return "ZeroJump";
        case ErrorKind::AxisUnresolved: return "AxisUnresolved";
        case ErrorKind::LeftHalfPlane: return "LeftHalfPlane";
        case ErrorKind::NoBracket: return "NoBracket";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mhdshock
