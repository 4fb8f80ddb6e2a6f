#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "twinfinder/ast.hpp"
#include "twinfinder/errors.hpp"

namespace twinfinder {

enum class DeclKind { Global, Local, StructMember, Param };

const char* to_string(DeclKind kind);

/// One analysis target: a declared pointer/array, a pointer-typed parameter,
/// or a struct-member path used as a pointer (indexed or dereferenced).
struct PointerRecord {
  std::string name;  // identifier path, e.g. "mdef->sseq"
  DeclKind decl_kind = DeclKind::Local;
  std::string owning_function;  // empty for globals
  SourceLocation decl_loc;
};

enum class EdgeKind { Assignment, ArrayIndex, CallParam, LoopBound };

const char* to_string(EdgeKind kind);

/// Per-function dependency graph over identifier paths.
struct DependencyGraph {
  struct Edge {
    std::string from;
    std::string to;
    EdgeKind kind;
    auto operator<=>(const Edge&) const = default;
  };

  std::string function;
  std::set<std::string> nodes;
  std::set<Edge> edges;

  std::string dump() const;  // one `from -> to [kind]` line per edge
};

enum class VarRole { Index, Bound, LengthSource, BaseAlias, Other };

const char* to_string(VarRole role);

/// Where a variable indexes the target pointer: nesting depth 0 is the
/// outermost subscript, and `at` is the position of the index expression.
struct IndexUse {
  int depth = 0;
  SourceLocation at;
};

struct PointerRelatedVars {
  PointerRecord pointer;
  std::vector<std::string> vars;  // first-use order; includes the pointer itself
  std::map<std::string, VarRole> roles;
  std::map<std::string, IndexUse> index_uses;  // index vars -> first use on the target

  bool contains(const std::string& path) const {
    return roles.find(path) != roles.end();
  }
};

struct TaintOptions {
  /// Whether `*p = x` adds a backward edge from x into p's taint set.
  bool taint_stores_through_pointer = true;
};

std::vector<PointerRecord> select_pointers(const TranslationUnit& unit);
std::vector<PointerRecord> select_pointers(const std::vector<TranslationUnit>& units);

/// Throws TargetNotUsed when the target never appears in `fn`.
DependencyGraph build_dependency_graph(const FunctionDef& fn, const PointerRecord& target,
                                       const TaintOptions& options = {});

PointerRelatedVars taint_pointer_related(const DependencyGraph& graph,
                                         const PointerRecord& target, const FunctionDef& fn);

/// Canonical identifier path of an expression (ID, StructRef chain, or a call
/// such as `f(a)`); empty when the expression is not a path.
std::string expr_path(const AstNode& expr);

/// The pointer path written or read through an lvalue: strips ArrayRef and
/// Deref layers (`p[i]` and `*p` both resolve to `p`).
std::string lvalue_base_path(const AstNode& expr);

}  // namespace twinfinder
