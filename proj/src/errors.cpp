#include "kummer/errors.hpp"

namespace kummer {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddResult: return "OddResult";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::SquareDiscriminant: return "SquareDiscriminant";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotFundamental: return "NotFundamental";
    case ErrorCode::UnsupportedDiscriminant: return "UnsupportedDiscriminant";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::UnsupportedLattice: return "UnsupportedLattice";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::OverflowScope: return "OverflowScope";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

} // namespace kummer
