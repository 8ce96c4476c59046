#ifndef WGATE_ERROR_HPP
#define WGATE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wgate {

// Coarse classification used by the CLI to pick exit codes:
// Input -> 2, Numerical -> 3, Certificate -> 4.
enum class ErrorKind { Input, Numerical, Certificate };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

#define WGATE_DEFINE_ERROR(Name, Kind)                                        \
  struct Name : Error {                                                       \
    explicit Name(const std::string& msg) : Error(ErrorKind::Kind, #Name, msg) {} \
  }

// input / document errors
WGATE_DEFINE_ERROR(SyntaxError, Input);
WGATE_DEFINE_ERROR(OverlapError, Input);
WGATE_DEFINE_ERROR(ContainmentError, Input);
WGATE_DEFINE_ERROR(DegenerateError, Input);
WGATE_DEFINE_ERROR(EpsilonTooLarge, Input);
WGATE_DEFINE_ERROR(IndexError, Input);
WGATE_DEFINE_ERROR(OffBoundaryError, Input);
WGATE_DEFINE_ERROR(OutsideDomain, Input);
WGATE_DEFINE_ERROR(InvalidBoundaryData, Input);
WGATE_DEFINE_ERROR(InvalidInput, Input);
WGATE_DEFINE_ERROR(InsufficientSamples, Input);
WGATE_DEFINE_ERROR(IoError, Input);

// numerical failures
WGATE_DEFINE_ERROR(DivisionByZero, Numerical);
WGATE_DEFINE_ERROR(IllConditioned, Numerical);
WGATE_DEFINE_ERROR(ZeroOnContour, Numerical);
WGATE_DEFINE_ERROR(NonConvergent, Numerical);
WGATE_DEFINE_ERROR(Unstable, Numerical);
WGATE_DEFINE_ERROR(SingularPeriodMatrix, Numerical);
WGATE_DEFINE_ERROR(ResidualLogPeriod, Numerical);

// certificate failures
WGATE_DEFINE_ERROR(InconsistentCriteria, Certificate);
WGATE_DEFINE_ERROR(NotExtendible, Certificate);
WGATE_DEFINE_ERROR(NoGoodPoint, Certificate);
WGATE_DEFINE_ERROR(DeflationResidual, Certificate);
WGATE_DEFINE_ERROR(DegreeNotMinusOne, Certificate);
WGATE_DEFINE_ERROR(CertificateFailed, Certificate);
WGATE_DEFINE_ERROR(HomotopyMismatch, Certificate);

#undef WGATE_DEFINE_ERROR

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return 2;
    case ErrorKind::Numerical: return 3;
    case ErrorKind::Certificate: return 4;
  }
  return 1;
}

} // namespace wgate

#endif
