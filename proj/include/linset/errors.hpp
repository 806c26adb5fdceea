#pragma once

#include <stdexcept>
#include <string>

namespace linset {

enum class Err {
  NonPrimeCharacteristic,
  DegreeOutOfRange,
  DivisionByZero,
  SingularEndo,
  NotAdmissible,
  ZeroScalar,
  PointsNotOnChain,
  NotScattered,
  NotTransversal,
  NoProductStructure,
  SetTooSmall,
  EqualChains,
  BudgetExceeded,
  UnknownProposition,
  BadEncoding,
  InvalidArgument,
};

class LinsetError : public std::runtime_error {
 public:
  LinsetError(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw LinsetError(code, msg); }

}  // namespace linset
