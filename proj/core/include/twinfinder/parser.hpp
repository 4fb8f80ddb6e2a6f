#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twinfinder/ast.hpp"
#include "twinfinder/errors.hpp"

namespace twinfinder {

struct ParseDiagnostic {
  SourceLocation loc;
  std::string message;
  bool unsupported = false;  // true for UnsupportedConstruct, false for syntax errors
};

/// Parses preprocessor-expanded C-subset source. Throws ParseError or
/// UnsupportedConstruct on the first problem.
TranslationUnit parse_unit(std::string_view text, std::string filename);

/// Lenient variant: functions (or top-level constructs) that fail to parse
/// are skipped and reported through `diags`; everything else is returned.
TranslationUnit parse_unit(std::string_view text, std::string filename,
                           std::vector<ParseDiagnostic>& diags);

/// Spec-shaped entry point: the function definitions only.
std::vector<FunctionDef> parse_source(std::string_view text, std::string filename);

}  // namespace twinfinder
