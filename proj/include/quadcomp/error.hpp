#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadcomp {

enum class Errc {
  NotOddPrime,
  InvalidDegree,
  DivisionByZero,
  BothZero,
  ConstantPolynomial,
  DegreeTooSmall,
  OddDegree,
  NotPowerOfTwo,
  NotMonic,
  IndexOutOfRange,
  DuplicateLetter,
  EmptyAlphabet,
  EmptyWord,
  EmptyChain,
  BudgetExceeded,
  UnsupportedFormat,
  NotDecomposable,
  NotIrreducible,
  ContextMismatch,
  InvalidArgument,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace quadcomp
