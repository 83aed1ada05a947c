#pragma once

#include <stdexcept>
#include <string>

namespace segsym {

enum class ErrorKind {
  BallOutsideDomain,
  PointOutsideDomain,
  MSampleTooSmall,
  DomainTooLarge,
  Precondition,
  NoConvergence,
  ZeroDenominator,
  NoSignChange,
  MultipleSignChanges,
  NegativeInput,
  ConfigInvalid,
  InputMissing,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Solver failure with the iteration count and the residual it stalled at.
class NoConvergence : public Error {
 public:
  NoConvergence(std::string where, long iterations, double residual);
  long iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  long iterations_;
  double residual_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Precondition, what);
}

}  // namespace segsym
