#pragma once

#include <stdexcept>
#include <string>

#include "twinfinder/source_location.hpp"

namespace twinfinder {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax outside the supported C subset.
struct ParseError : Error {
  ParseError(SourceLocation at, std::string expected_what);
  SourceLocation loc;
  std::string expected;
};

/// Recognized C that the subset deliberately excludes (goto, sizeof, ...).
/// Callers may skip the enclosing function and continue.
struct UnsupportedConstruct : Error {
  UnsupportedConstruct(SourceLocation at, std::string construct_name);
  SourceLocation loc;
  std::string construct;
};

struct TargetNotUsed : Error {
  explicit TargetNotUsed(const std::string& target);
};

struct EmptySlice : Error {
  explicit EmptySlice(const std::string& target);
};

struct PresetMismatch : Error {
  PresetMismatch() : Error("feature vectors use different presets") {}
};

struct DeltaInvalid : Error {
  DeltaInvalid() : Error("feedback weight delta must be > 1.0") {}
};

struct PathExplosion : Error {
  explicit PathExplosion(int cap);
};

struct OracleTooLarge : Error {
  explicit OracleTooLarge(int var_count);
};

struct EmptyCorpus : Error {
  explicit EmptyCorpus(const std::string& dir);
};

}  // namespace twinfinder
