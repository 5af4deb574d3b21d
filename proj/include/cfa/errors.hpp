#pragma once

#include <stdexcept>
#include <string>

namespace cfa {

/// Broad failure categories. The CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorKind {
    Data,       ///< malformed input, bad parameters, violated preconditions
    Precision,  ///< the truncation is too coarse to decide the question
    Property,   ///< a checked mathematical property failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Short machine-readable name, e.g. "NotUnit".
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

#define CFA_DEFINE_ERROR(Name, Kind)                                                   \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, #Name, what) {} \
    }

CFA_DEFINE_ERROR(BadParams, Data);
CFA_DEFINE_ERROR(NotUnit, Data);
CFA_DEFINE_ERROR(NotSubspace, Data);
CFA_DEFINE_ERROR(NotCentral, Data);
CFA_DEFINE_ERROR(NotNilpotentModM, Data);
CFA_DEFINE_ERROR(DomainNotAsserted, Data);
CFA_DEFINE_ERROR(HypothesisNotMet, Data);
CFA_DEFINE_ERROR(PrecisionTooLow, Precision);
CFA_DEFINE_ERROR(CapTooLow, Precision);
CFA_DEFINE_ERROR(VerificationFailed, Property);
CFA_DEFINE_ERROR(PropertyViolation, Property);

#undef CFA_DEFINE_ERROR

/// Raised by lift_solve when the principal parts of the spanners do not
/// span the graded piece of the current residual.
class NotSpanned : public Error {
public:
    NotSpanned(int degree, const std::string& what)
        : Error(ErrorKind::Data, "NotSpanned", what), degree_(degree) {}
    int degree() const noexcept { return degree_; }

private:
    int degree_;
};

}  // namespace cfa
