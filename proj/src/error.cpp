#include "quadcomp/error.hpp"

namespace quadcomp {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::InvalidDegree: return "InvalidDegree";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::BothZero: return "BothZero";
    case Errc::ConstantPolynomial: return "ConstantPolynomial";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::OddDegree: return "OddDegree";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::NotMonic: return "NotMonic";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateLetter: return "DuplicateLetter";
    case Errc::EmptyAlphabet: return "EmptyAlphabet";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::EmptyChain: return "EmptyChain";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::NotDecomposable: return "NotDecomposable";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace quadcomp
