#pragma once
#include <stdexcept>
#include <string>

namespace tame3 {

enum class Errc {
  Syntax,
  NotInvertible,
  NotDirectlyInvertible,
  ZeroPolynomial,
  WeightNotDominant,
  DegenerateSegment,
  EmptyWindow,
  PointsNotOnLine,
  NotInStabilizer,
  JunctionNotShared,
  AmbiguousArc,
  LetterNotInFactors,
  NotCyclicallyReduced,
  DegenerateStrip,
  DependentForms,
  BadConstants,
  InconsistentDegrees,
  HypothesisFails,
  SurrogateFailed,
  InvalidDiagram,
  AngleTooLarge,
  IOError,
};

const char* errc_name(Errc c);

// Domain error; the CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Errc code() const { return code_; }
  int index = -1;  // offending letter / junction, when meaningful

 private:
  Errc code_;
};

}  // namespace tame3
