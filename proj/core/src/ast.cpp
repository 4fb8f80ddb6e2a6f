#include "twinfinder/ast.hpp"

namespace twinfinder {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::ID: return "ID";
    case NodeKind::Constant: return "Constant";
    case NodeKind::ArrayRef: return "ArrayRef";
    case NodeKind::Assignment: return "Assignment";
    case NodeKind::StructRef: return "StructRef";
    case NodeKind::BinaryOp: return "BinaryOp";
    case NodeKind::UnaryOp: return "UnaryOp";
    case NodeKind::Compound: return "Compound";
    case NodeKind::For: return "For";
    case NodeKind::While: return "While";
    case NodeKind::If: return "If";
    case NodeKind::Switch: return "Switch";
    case NodeKind::Case: return "Case";
    case NodeKind::Call: return "Call";
    case NodeKind::Return: return "Return";
    case NodeKind::Decl: return "Decl";
    case NodeKind::FuncDef: return "FuncDef";
    case NodeKind::Param: return "Param";
    case NodeKind::Deref: return "Deref";
    case NodeKind::AddressOf: return "AddressOf";
    case NodeKind::Cast: return "Cast";
    case NodeKind::TernaryOp: return "TernaryOp";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
  }
  return "?";
}

namespace {

template <typename Visit>
void walk_post_order(const AstNode& node, Visit&& visit) {
  for (const AstNode& c : node.children) walk_post_order(c, visit);
  visit(node);
}

}  // namespace

std::vector<std::pair<NodeKind, int>> post_order(const AstNode& node) {
  std::vector<std::pair<NodeKind, int>> seq;
  walk_post_order(node, [&](const AstNode& n) { seq.emplace_back(n.kind, n.node_id); });
  return seq;
}

std::vector<NodeKind> post_order_kinds(const AstNode& node) {
  std::vector<NodeKind> seq;
  walk_post_order(node, [&](const AstNode& n) { seq.push_back(n.kind); });
  return seq;
}

std::size_t count_nodes(const AstNode& node) {
  std::size_t n = 1;
  for (const AstNode& c : node.children) n += count_nodes(c);
  return n;
}

namespace {

void assign_ids_rec(AstNode& node, int& next) {
  for (AstNode& c : node.children) assign_ids_rec(c, next);
  node.node_id = next++;
}

}  // namespace

void assign_node_ids(AstNode& root) {
  int next = 0;
  assign_ids_rec(root, next);
}

bool is_control_statement(NodeKind kind) {
  switch (kind) {
    case NodeKind::For:
    case NodeKind::While:
    case NodeKind::If:
    case NodeKind::Switch:
    case NodeKind::Case:
      return true;
    default:
      return false;
  }
}

namespace {

void collect_statements(const AstNode& stmt, const AstNode* parent,
                        std::vector<StatementRef>& out);

void collect_from_body(const AstNode& body, const AstNode* parent,
                       std::vector<StatementRef>& out) {
  if (body.kind == NodeKind::Compound) {
    for (const AstNode& c : body.children) collect_statements(c, parent, out);
  } else {
    collect_statements(body, parent, out);
  }
}

void collect_statements(const AstNode& stmt, const AstNode* parent,
                        std::vector<StatementRef>& out) {
  if (stmt.kind == NodeKind::Compound) {  // bare block, transparent
    for (const AstNode& c : stmt.children) collect_statements(c, parent, out);
    return;
  }
  out.push_back({&stmt, parent});
  switch (stmt.kind) {
    case NodeKind::For:
      if (stmt.children.size() == 4) collect_from_body(stmt.children[3], &stmt, out);
      break;
    case NodeKind::While:
      if (stmt.children.size() == 2) collect_from_body(stmt.children[1], &stmt, out);
      break;
    case NodeKind::If:
      if (stmt.children.size() >= 2) collect_from_body(stmt.children[1], &stmt, out);
      if (stmt.children.size() == 3) collect_from_body(stmt.children[2], &stmt, out);
      break;
    case NodeKind::Switch:
      for (std::size_t i = 1; i < stmt.children.size(); ++i)
        collect_statements(stmt.children[i], &stmt, out);
      break;
    case NodeKind::Case:
      for (const AstNode& c : stmt.children) collect_statements(c, &stmt, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<StatementRef> subtree_statements(const AstNode& body) {
  std::vector<StatementRef> out;
  for (const AstNode& c : body.children) collect_statements(c, nullptr, out);
  return out;
}

}  // namespace twinfinder
