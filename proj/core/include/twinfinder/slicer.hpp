#pragma once

#include <set>
#include <vector>

#include "twinfinder/ast.hpp"
#include "twinfinder/pointer_analysis.hpp"

namespace twinfinder {

/// Pointer-isolated code: the statements of one function kept for one target
/// pointer, with a map back to the original source lines.
struct SliceFragment {
  PointerRecord pointer;
  std::string function;
  std::vector<AstNode> statements;       // kept statements, original program order
  AstNode tree;                          // synthetic Compound preserving control nesting
  std::vector<SourceLocation> origin;    // one location per kept statement
  int fragment_id = -1;
};

/// Statements where a related variable is assigned or passed as a call
/// argument. Returns original node_ids.
std::set<int> backward_slice(const FunctionDef& fn, const PointerRelatedVars& related);

/// Adds control constructs dominating a kept statement, or whose condition
/// mentions a related variable; closed transitively over nesting.
std::set<int> forward_control_slice(const FunctionDef& fn, const std::set<int>& data_slice,
                                    const PointerRelatedVars& related);

/// Composes the dependency graph, the taint pass and both slices.
/// Throws EmptySlice when no statement survives.
SliceFragment isolate(const FunctionDef& fn, const PointerRecord& target,
                      const TaintOptions& options = {});

SliceFragment isolate(const FunctionDef& fn, const PointerRelatedVars& related);

/// Header-only span for control statements, full span otherwise.
SourceLocation statement_origin(const AstNode& stmt);

}  // namespace twinfinder
