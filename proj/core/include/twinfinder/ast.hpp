#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twinfinder/source_location.hpp"

namespace twinfinder {

/// Closed catalog of syntax-tree node kinds. The enumerator order is
/// load-bearing: it defines the dimension order of feature vectors, and the
/// first nine kinds form the reduced "paper9" preset.
enum class NodeKind : std::uint8_t {
  ID,
  Constant,
  ArrayRef,
  Assignment,
  StructRef,
  BinaryOp,
  UnaryOp,
  Compound,
  For,
  While,
  If,
  Switch,
  Case,
  Call,
  Return,
  Decl,
  FuncDef,
  Param,
  Deref,
  AddressOf,
  Cast,
  TernaryOp,
  Break,
  Continue,
};

inline constexpr std::size_t kNodeKindCount = 24;

const char* to_string(NodeKind kind);

/// Node layout by kind:
///   ID          token = identifier, no children
///   Constant    token = literal text, no children
///   ArrayRef    children = [base, index]
///   Assignment  children = [lhs, rhs]; compound assignments are desugared
///   StructRef   children = [base, ID(member)]; covers both `->` and `.`
///   BinaryOp    children = [lhs, rhs], token = operator
///   UnaryOp     children = [operand], token = operator
///   Compound    children = statements
///   For         children = [init, cond, incr, body]
///   While       children = [cond, body]
///   If          children = [cond, then] or [cond, then, else]
///   Switch      children = [expr, Case...]
///   Case        children = arm statements, token = label text or "default"
///   Call        children = [callee, args...]
///   Return      children = [] or [expr]
///   Decl        token = declared name, children = [] or [initializer]
///   Deref       children = [operand]
///   AddressOf   children = [operand]
///   Cast        children = [operand], token = type text
///   TernaryOp   children = [cond, then, else]
struct AstNode {
  NodeKind kind = NodeKind::Compound;
  std::vector<AstNode> children;
  std::string token;
  SourceLocation loc;
  int node_id = -1;
};

/// One declarator as written in the source, with the pointer/array flags the
/// downstream pointer selection needs.
struct DeclInfo {
  std::string name;
  std::string type_text;
  bool is_pointer = false;
  bool is_array = false;
  SourceLocation loc;
};

struct FunctionDef {
  struct Param {
    std::string name;
    std::string type;
    bool is_pointer = false;
  };

  std::string name;
  std::string return_type;
  std::vector<Param> params;
  AstNode body;  // kind == Compound
  SourceLocation loc;
  std::vector<DeclInfo> local_decls;
};

struct TranslationUnit {
  std::string filename;
  std::vector<FunctionDef> functions;
  std::vector<DeclInfo> globals;
};

/// Children before parents, deterministic order; pairs are (kind, node_id).
std::vector<std::pair<NodeKind, int>> post_order(const AstNode& node);

std::vector<NodeKind> post_order_kinds(const AstNode& node);

std::size_t count_nodes(const AstNode& node);

/// Assigns node_id 0..n-1 in post-order, so every descendant id is smaller
/// than its ancestor's.
void assign_node_ids(AstNode& root);

/// A statement together with its innermost enclosing control construct
/// (nullptr at the top level). Bare compound blocks are transparent.
struct StatementRef {
  const AstNode* stmt = nullptr;
  const AstNode* control_parent = nullptr;
};

/// Flattens a statement list: top-level statements first, then statements
/// nested in control constructs, pre-order. Control constructs (For, While,
/// If, Switch, Case) are themselves entries.
std::vector<StatementRef> subtree_statements(const AstNode& body);

bool is_control_statement(NodeKind kind);

}  // namespace twinfinder
