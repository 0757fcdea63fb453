#ifndef LOGCOH_ERRORS_HPP
#define LOGCOH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logcoh {

// Failure classes surfaced by the library. The CLI maps these to exit codes;
// tests match on `kind`.
enum class Err {
  ParseError,              // bad polynomial syntax (carries position)
  UnknownVariable,         // identifier outside the declared variable set
  ZeroOrConstantInput,     // f == 0 or f constant where a curve is required
  NotReduced,              // gcd(f, fx, fy) nonconstant
  NotHomogeneous,          // graded operation fed an inhomogeneous vector
  BadSyzygy,               // imported triple does not annihilate (f, fx, fy)
  FormatError,             // malformed basis file / request
  SaitoFail,               // det(A) is not a nonzero constant multiple of f
  DivisionFail,            // exact division required by a certificate failed
  NonHolonomicOrZeroB,     // b-function search exceeded its degree cap
  NotInImage,              // koszul_split input has nonzero class
  NotIntegrable,           // koszul_integrate cross-check failed
  InternalTransferFailure, // zig-zag reached an impossible state
  DegreeCapExceeded,       // tau-preimage solve ran out of degree budget
  ConditionsViolated,      // h2fast dimension conditions fail
  Internal,                // invariant breakage (bug trap)
};

class Error : public std::runtime_error {
public:
  Error(Err kind, std::string msg, std::size_t pos = npos)
      : std::runtime_error(std::move(msg)), kind_(kind), pos_(pos) {}

  Err kind() const { return kind_; }
  // Byte offset into the parsed text; npos when not a parse error.
  std::size_t position() const { return pos_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  Err kind_;
  std::size_t pos_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg,
                              std::size_t pos = Error::npos) {
  throw Error(kind, msg, pos);
}

} // namespace logcoh

#endif
