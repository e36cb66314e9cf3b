#pragma once

#include <stdexcept>
#include <string>

namespace qcdeph {

enum class ErrorCode {
  NonSquare,
  NonHermitian,
  NotPSD,
  BadShape,
  InvalidParams,
  BadIndex,
  EmptyInput,
  InvariantViolation,
  ParseError,
};

/// Which DensityMatrix invariant failed validation.
enum class Invariant { None, Trace, Hermiticity, Positivity };

inline const char* to_string(Invariant which) {
  switch (which) {
    case Invariant::Trace: return "trace";
    case Invariant::Hermiticity: return "hermiticity";
    case Invariant::Positivity: return "positivity";
    case Invariant::None: break;
  }
  return "none";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, Invariant which = Invariant::None)
      : std::runtime_error(what), code_(code), which_(which) {}

  ErrorCode code() const noexcept { return code_; }
  Invariant invariant() const noexcept { return which_; }

 private:
  ErrorCode code_;
  Invariant which_;
};

}  // namespace qcdeph
