#pragma once

#include <stdexcept>
#include <string>

namespace inrect {

enum class ErrorCode {
  TooFewSamples,
  RepeatedEndpoint,
  BadDegree,
  DegenerateInput,
  DegenerateVelocity,
  SelfIntersecting,
  BadN,
  NonpositiveRatio,
  SamePair,
  DegenerateDiagonal,
  FamilyMismatch,
  NotUnitModulus,
  EpsilonTooLarge,
  OpenLoop,
  BasePointOnLoop,
  NonIntegerWinding,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inrect
