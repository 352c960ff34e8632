#pragma once

#include <stdexcept>
#include <string>

namespace pppf {

struct Error : std::runtime_error {
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind(std::move(kind)) {}
  std::string kind;
};

#define PPPF_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

PPPF_DEFINE_ERROR(AtInfinityDegenerate);
PPPF_DEFINE_ERROR(SolverFailure);
PPPF_DEFINE_ERROR(NonTransverseIntersection);
PPPF_DEFINE_ERROR(FactorDegreeTooHigh);
PPPF_DEFINE_ERROR(HomologyNotVisible);
PPPF_DEFINE_ERROR(NonCommutingVanishingSet);
PPPF_DEFINE_ERROR(EmptyZClass);
PPPF_DEFINE_ERROR(PathTooCloseToCriticalValue);
PPPF_DEFINE_ERROR(ContinuationDivergence);
PPPF_DEFINE_ERROR(NotClosed);
PPPF_DEFINE_ERROR(NoIntersection);
PPPF_DEFINE_ERROR(NoReturn);
PPPF_DEFINE_ERROR(InconsistentOrder);
PPPF_DEFINE_ERROR(TopFormMismatch);
PPPF_DEFINE_ERROR(ContinuationLoss);
PPPF_DEFINE_ERROR(DetourStillSingular);
PPPF_DEFINE_ERROR(ParseError);
PPPF_DEFINE_ERROR(ValidationError);

#undef PPPF_DEFINE_ERROR

}  // namespace pppf
