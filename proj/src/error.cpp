#include "segsym/error.hpp"

#include <sstream>

namespace segsym {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BallOutsideDomain: return "BallOutsideDomain";
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::MSampleTooSmall: return "MSampleTooSmall";
    case ErrorKind::DomainTooLarge: return "DomainTooLarge";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::MultipleSignChanges: return "MultipleSignChanges";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::InputMissing: return "InputMissing";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

namespace {
std::string no_convergence_message(const std::string& where, long iterations, double residual) {
  std::ostringstream os;
  os << where << " stalled after " << iterations << " iterations at residual " << residual;
  return os.str();
}
}  // namespace

NoConvergence::NoConvergence(std::string where, long iterations, double residual)
    : Error(ErrorKind::NoConvergence, no_convergence_message(where, iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace segsym
