#include "inrect/error.hpp"

namespace inrect {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::RepeatedEndpoint: return "RepeatedEndpoint";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegenerateVelocity: return "DegenerateVelocity";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::NonpositiveRatio: return "NonpositiveRatio";
    case ErrorCode::SamePair: return "SamePair";
    case ErrorCode::DegenerateDiagonal: return "DegenerateDiagonal";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::OpenLoop: return "OpenLoop";
    case ErrorCode::BasePointOnLoop: return "BasePointOnLoop";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace inrect
