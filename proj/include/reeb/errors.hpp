#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable tag used in CLI error payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define REEB_DEFINE_ERROR(Name, Tag)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& message) : Error(Tag, message) {} \
  };

REEB_DEFINE_ERROR(ParseError, "ParseError")
REEB_DEFINE_ERROR(TopologyError, "TopologyError")
REEB_DEFINE_ERROR(DataError, "DataError")
REEB_DEFINE_ERROR(UnsupportedMap, "UnsupportedMap")
REEB_DEFINE_ERROR(NotSimpleMorse, "NotSimpleMorse")
REEB_DEFINE_ERROR(UnclassifiableTransition, "UnclassifiableTransition")
REEB_DEFINE_ERROR(SlabTooWide, "SlabTooWide")
REEB_DEFINE_ERROR(InsufficientSamples, "InsufficientSamples")
REEB_DEFINE_ERROR(NonIntegerFormulaValue, "NonIntegerFormulaValue")
REEB_DEFINE_ERROR(LevelOnVertex, "LevelOnVertex")
REEB_DEFINE_ERROR(InfeasibleTarget, "InfeasibleTarget")
REEB_DEFINE_ERROR(AmbiguousMatching, "AmbiguousMatching")
REEB_DEFINE_ERROR(InvalidGraph, "InvalidGraph")

#undef REEB_DEFINE_ERROR

/// No circulation function exists; carries the nonzero total moment.
class NoSolution : public Error {
 public:
  NoSolution(const std::string& message, double total_moment)
      : Error("NoSolution", message), total_moment_(total_moment) {}
  double total_moment() const noexcept { return total_moment_; }

 private:
  double total_moment_;
};

}  // namespace reeb
