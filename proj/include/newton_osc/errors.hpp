#pragma once

#include <stdexcept>
#include <string>

namespace newton_osc {

enum class ErrorCode {
  EmptyInput,
  UnsupportedDimension,
  PointNotOnBoundary,
  PointOutsidePolyhedron,
  Overflow,
  FlatFunction,
  FaceNotOfThisPolyhedron,
  PhaseWithoutFiniteDistance,
  ConeNotCompatible,
  NotUnimodular,
  UnimodularizationBudgetExceeded,
  FanNotCompatible,
  DimensionTooLarge,
  QuadratureBudgetExceeded,
  InsufficientSamples,
  GatesNotHeld,
  NoncompactPrincipalFaceWithoutLocalization,
  InvalidInput,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace newton_osc
