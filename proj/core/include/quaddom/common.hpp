#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace quaddom {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Failure categories raised by the library. Each value matches one of the
/// documented error conditions of the operation that raises it.
enum class Errc {
  SubdivisionLimit,
  NonFiniteEvaluation,
  SlowDecay,
  NoSignChange,
  DegenerateLeadingCoefficient,
  SingularArgument,
  OnSegment,
  IllConditionedJetSystem,
  NodeAtPole,
  CoincidentAuxPoints,
  InsideSupport,
  NonzeroTotalCharge,
  TruncationDominates,
  NoPositiveRoot,
  ParameterOutOfRange,
  UnclassifiedBoundary,
  EvaluationBelowStrip,
  ContourCollision,
  UnsupportedKind,
  InvalidArgument,
  SchemaError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace quaddom
