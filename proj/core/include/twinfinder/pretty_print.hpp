#pragma once

#include <string>

#include "twinfinder/ast.hpp"

namespace twinfinder {

/// Renders a tree back to parseable subset C. Member accesses always print
/// as `->`; the node-kind structure round-trips, token spellings may not.
std::string pretty_print(const AstNode& node, int indent = 0);

std::string pretty_print(const FunctionDef& fn);

}  // namespace twinfinder
