#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lkq {

enum class ErrorKind {
  // input / contract violations
  Input,
  Unbounded,
  Empty,
  Redundant,
  Degenerate,
  GroupingMismatch,
  NotCuboid,
  NonIntegral,
  RankDeficient,
  NotPositivePair,
  NonpositiveWeight,
  DegenerateSampleSet,
  DegenerateRoots,
  PositivityFailure,
  SignFailure,
  // numerical failures
  SingularSystem,
  Inconsistent,
  BoundaryProximity,
  IllConditioned,
  QuadratureFailure,
  CharacteristicHyperplane,
  SingularRestriction,
  // verdicts
  SelfCheckFailure,
  IdentityFailure,
  ConditionFailure,
  NonConstantScalar,
  ContainmentFailure,
  CoverageFailure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lkq
