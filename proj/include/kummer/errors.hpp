#ifndef KUMMER_ERRORS_HPP
#define KUMMER_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kummer {

enum class ErrorCode {
    SingularMatrix,
    DimensionMismatch,
    OddResult,
    NotEven,
    DegenerateInput,
    NonPrimitive,
    SquareDiscriminant,
    NotIndefinite,
    DiscriminantMismatch,
    NotPrimitive,
    NotFundamental,
    UnsupportedDiscriminant,
    NotCyclic,
    NotSubgroup,
    UnsupportedLattice,
    NotHyperbolic,
    OverflowScope,
    SearchExhausted,
    InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class KummerError : public std::runtime_error
{
  public:
    KummerError(ErrorCode code, const std::string & what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace kummer

#endif
