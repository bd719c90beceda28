#pragma once

#include <stdexcept>
#include <string>

namespace cubeavg {

enum class Errc {
  NonBijective,
  NotMeasurePreserving,
  NotCommuting,
  BadWeights,
  MismatchedSpace,
  EmptyCellMass,
  SupportOverflow,
  EmptyBox,
  NotIndicator,
  HypothesisViolated,
  BadConfig,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* errc_name(Errc c);

}  // namespace cubeavg
