#include "cstre/errors.hpp"

namespace cstre {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadQubitCount: return "BadQubitCount";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::BadSchmidt: return "BadSchmidt";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    }
    return "Unknown";
}

} // namespace cstre
