#pragma once

#include <stdexcept>
#include <string>

namespace betalab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BETALAB_DECLARE_ERROR(Name)                                            \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

BETALAB_DECLARE_ERROR(InvalidIsolation);
BETALAB_DECLARE_ERROR(RingMismatch);
BETALAB_DECLARE_ERROR(NotInvertible);
BETALAB_DECLARE_ERROR(NonConvergence);
BETALAB_DECLARE_ERROR(OutOfRange);
BETALAB_DECLARE_ERROR(InvalidMap);
BETALAB_DECLARE_ERROR(NotFinite);
BETALAB_DECLARE_ERROR(NotInfinite);
BETALAB_DECLARE_ERROR(InvalidSymbol);
BETALAB_DECLARE_ERROR(InsideDisk);
BETALAB_DECLARE_ERROR(OutsideDisk);
BETALAB_DECLARE_ERROR(HypothesisViolation);
BETALAB_DECLARE_ERROR(IsolationFailure);
BETALAB_DECLARE_ERROR(BoundViolation);
BETALAB_DECLARE_ERROR(NoRoot);
BETALAB_DECLARE_ERROR(NotUnimodal);
BETALAB_DECLARE_ERROR(NotUniform);
BETALAB_DECLARE_ERROR(NotExpanding);
BETALAB_DECLARE_ERROR(NotPostCriticallyFinite);
BETALAB_DECLARE_ERROR(ExplodedBreakpointCount);
BETALAB_DECLARE_ERROR(ParseError);

#undef BETALAB_DECLARE_ERROR

/// Raised by the criterion orbit check; carries the first failing orbit index.
class VerificationFailure : public Error {
public:
    VerificationFailure(std::size_t index, const std::string& what)
        : Error("VerificationFailure at index " + std::to_string(index) + ": " + what),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Three-way comparison result shared by the exact comparisons.
enum class Order { Less, Equal, Greater };

inline const char* to_string(Order o) {
    switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
    }
    return "?";
}

} // namespace betalab
