#pragma once

#include <stdexcept>
#include <string>

namespace ordcirc {

enum class ErrorKind {
    DivisionNearZero,
    NegativeSqrt,
    PrecisionExhausted,
    CenterInversion,
    DegenerateTriple,
    PredicateUndecided,
    DuplicatePoints,
    UnsupportedDegree,
    CaseMismatch,
    IrrationalSingularity,
    LineInCurve,
    SingularHit,
    Mismatch,
    ToleranceExceeded,
    HostUnsupported,
    InvalidParameters,
    NoWitnessKnown,
    ParseError,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::NegativeSqrt: return "NegativeSqrt";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::CenterInversion: return "CenterInversion";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::PredicateUndecided: return "PredicateUndecided";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::CaseMismatch: return "CaseMismatch";
    case ErrorKind::IrrationalSingularity: return "IrrationalSingularity";
    case ErrorKind::LineInCurve: return "LineInCurve";
    case ErrorKind::SingularHit: return "SingularHit";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorKind::HostUnsupported: return "HostUnsupported";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::NoWitnessKnown: return "NoWitnessKnown";
    case ErrorKind::ParseError: return "ParseError";
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

} // namespace ordcirc
