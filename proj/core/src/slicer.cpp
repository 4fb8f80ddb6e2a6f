#include "twinfinder/slicer.hpp"

#include <algorithm>

namespace twinfinder {

EmptySlice::EmptySlice(const std::string& target)
    : Error("slice is empty for target: " + target) {}

namespace {

bool path_or_prefix_related(const std::string& path, const PointerRelatedVars& related) {
  if (path.empty()) return false;
  if (related.contains(path)) return true;
  // Writing through a member or element also operates on the base pointer.
  std::string p = path;
  for (;;) {
    std::size_t pos = p.rfind("->");
    if (pos == std::string::npos || p.find('(') != std::string::npos) return false;
    p = p.substr(0, pos);
    if (related.contains(p)) return true;
  }
}

bool expr_mentions_related(const AstNode& expr, const PointerRelatedVars& related) {
  switch (expr.kind) {
    case NodeKind::ID:
    case NodeKind::StructRef:
    case NodeKind::Call:
      if (related.contains(expr_path(expr))) return true;
      break;
    default:
      break;
  }
  for (const AstNode& c : expr.children) {
    if (expr_mentions_related(c, related)) return true;
  }
  return false;
}

/// Assignments of a related variable anywhere inside `expr`.
bool assigns_related(const AstNode& expr, const PointerRelatedVars& related) {
  if (expr.kind == NodeKind::Assignment &&
      path_or_prefix_related(lvalue_base_path(expr.children[0]), related))
    return true;
  if (expr.kind == NodeKind::UnaryOp && (expr.token == "++" || expr.token == "--") &&
      path_or_prefix_related(lvalue_base_path(expr.children[0]), related))
    return true;
  if (expr.kind == NodeKind::Decl && !expr.children.empty() &&
      related.contains(expr.token))
    return true;
  for (const AstNode& c : expr.children)
    if (assigns_related(c, related)) return true;
  return false;
}

/// Calls passing a related variable as an argument anywhere inside `expr`.
bool passes_related(const AstNode& expr, const PointerRelatedVars& related) {
  if (expr.kind == NodeKind::Call) {
    for (std::size_t i = 1; i < expr.children.size(); ++i)
      if (expr_mentions_related(expr.children[i], related)) return true;
  }
  for (const AstNode& c : expr.children)
    if (passes_related(c, related)) return true;
  return false;
}

/// The parts of a statement owned by the statement itself: control headers
/// for control statements (bodies are separate statements), everything for
/// simple statements.
std::vector<const AstNode*> own_exprs(const AstNode& stmt) {
  switch (stmt.kind) {
    case NodeKind::For:
      return {&stmt.children[0], &stmt.children[1], &stmt.children[2]};
    case NodeKind::While:
    case NodeKind::If:
    case NodeKind::Switch:
      return {&stmt.children[0]};
    case NodeKind::Case:
      return {};
    default:
      return {&stmt};
  }
}

const AstNode* condition_of(const AstNode& stmt) {
  switch (stmt.kind) {
    case NodeKind::For:
      return &stmt.children[1];
    case NodeKind::While:
    case NodeKind::If:
    case NodeKind::Switch:
      return &stmt.children[0];
    default:
      return nullptr;
  }
}

}  // namespace

SourceLocation statement_origin(const AstNode& stmt) {
  if (!is_control_statement(stmt.kind)) return stmt.loc;
  SourceLocation loc = stmt.loc;
  loc.line_end = stmt.loc.line_begin;
  loc.col_end = stmt.loc.col_begin;
  for (const AstNode* part : own_exprs(stmt)) {
    if (part == &stmt) continue;
    if (part->loc.line_end > loc.line_end ||
        (part->loc.line_end == loc.line_end && part->loc.col_end > loc.col_end)) {
      loc.line_end = part->loc.line_end;
      loc.col_end = part->loc.col_end;
    }
  }
  return loc;
}

std::set<int> backward_slice(const FunctionDef& fn, const PointerRelatedVars& related) {
  std::set<int> kept;
  for (const StatementRef& s : subtree_statements(fn.body)) {
    bool keep = false;
    for (const AstNode* part : own_exprs(*s.stmt)) {
      if (assigns_related(*part, related) || passes_related(*part, related)) {
        keep = true;
        break;
      }
    }
    if (keep) kept.insert(s.stmt->node_id);
  }
  return kept;
}

std::set<int> forward_control_slice(const FunctionDef& fn, const std::set<int>& data_slice,
                                    const PointerRelatedVars& related) {
  std::vector<StatementRef> stmts = subtree_statements(fn.body);
  std::map<int, const AstNode*> parents;
  for (const StatementRef& s : stmts)
    parents[s.stmt->node_id] = s.control_parent;

  std::set<int> kept;
  auto keep_with_ancestors = [&](int id) {
    while (true) {
      auto it = parents.find(id);
      if (it == parents.end() || it->second == nullptr) break;
      kept.insert(it->second->node_id);
      id = it->second->node_id;
    }
  };

  for (int id : data_slice) keep_with_ancestors(id);
  for (const StatementRef& s : stmts) {
    if (!is_control_statement(s.stmt->kind)) continue;
    const AstNode* cond = condition_of(*s.stmt);
    if (cond && expr_mentions_related(*cond, related)) {
      kept.insert(s.stmt->node_id);
      keep_with_ancestors(s.stmt->node_id);
    }
  }
  return kept;
}

namespace {

bool any_kept_inside(const AstNode& body, const std::set<int>& keep);

bool stmt_or_descendant_kept(const AstNode& stmt, const std::set<int>& keep) {
  if (keep.count(stmt.node_id)) return true;
  switch (stmt.kind) {
    case NodeKind::Compound:
      return any_kept_inside(stmt, keep);
    case NodeKind::For:
      return stmt_or_descendant_kept(stmt.children[3], keep);
    case NodeKind::While:
      return stmt_or_descendant_kept(stmt.children[1], keep);
    case NodeKind::If: {
      bool k = stmt_or_descendant_kept(stmt.children[1], keep);
      if (!k && stmt.children.size() == 3) k = stmt_or_descendant_kept(stmt.children[2], keep);
      return k;
    }
    case NodeKind::Switch:
      for (std::size_t i = 1; i < stmt.children.size(); ++i)
        if (stmt_or_descendant_kept(stmt.children[i], keep)) return true;
      return false;
    case NodeKind::Case:
      return any_kept_inside(stmt, keep);
    default:
      return false;
  }
}

bool any_kept_inside(const AstNode& block, const std::set<int>& keep) {
  for (const AstNode& c : block.children)
    if (stmt_or_descendant_kept(c, keep)) return true;
  return false;
}

AstNode empty_compound(const SourceLocation& at) {
  AstNode c;
  c.kind = NodeKind::Compound;
  c.loc = at;
  c.node_id = -1;
  return c;
}

AstNode prune_statement(const AstNode& stmt, const std::set<int>& keep);

std::vector<AstNode> prune_block(const AstNode& block, const std::set<int>& keep) {
  std::vector<AstNode> kept;
  for (const AstNode& c : block.children) {
    if (c.kind == NodeKind::Compound) {
      for (AstNode& inner : prune_block(c, keep)) kept.push_back(std::move(inner));
      continue;
    }
    if (!stmt_or_descendant_kept(c, keep)) continue;
    kept.push_back(prune_statement(c, keep));
  }
  return kept;
}

AstNode prune_body(const AstNode& body, const std::set<int>& keep) {
  if (body.kind == NodeKind::Compound) {
    AstNode out = body;
    out.children = prune_block(body, keep);
    return out;
  }
  if (stmt_or_descendant_kept(body, keep)) return prune_statement(body, keep);
  return empty_compound(body.loc);
}

AstNode prune_statement(const AstNode& stmt, const std::set<int>& keep) {
  AstNode out = stmt;
  switch (stmt.kind) {
    case NodeKind::For:
      out.children[3] = prune_body(stmt.children[3], keep);
      return out;
    case NodeKind::While:
      out.children[1] = prune_body(stmt.children[1], keep);
      return out;
    case NodeKind::If:
      out.children[1] = prune_body(stmt.children[1], keep);
      if (stmt.children.size() == 3) {
        if (stmt_or_descendant_kept(stmt.children[2], keep))
          out.children[2] = prune_body(stmt.children[2], keep);
        else
          out.children.resize(2);
      }
      return out;
    case NodeKind::Switch: {
      AstNode pruned = stmt;
      pruned.children.resize(1);
      for (std::size_t i = 1; i < stmt.children.size(); ++i) {
        const AstNode& arm = stmt.children[i];
        if (!stmt_or_descendant_kept(arm, keep)) continue;
        AstNode arm_out = arm;
        arm_out.children = prune_block(arm, keep);
        pruned.children.push_back(std::move(arm_out));
      }
      return pruned;
    }
    default:
      return out;
  }
}

}  // namespace

SliceFragment isolate(const FunctionDef& fn, const PointerRelatedVars& related) {
  std::set<int> data = backward_slice(fn, related);
  std::set<int> control = forward_control_slice(fn, data, related);
  std::set<int> keep = data;
  keep.insert(control.begin(), control.end());
  if (keep.empty()) throw EmptySlice(related.pointer.name);

  SliceFragment fragment;
  fragment.pointer = related.pointer;
  fragment.function = fn.name;
  fragment.tree = empty_compound(fn.body.loc);
  fragment.tree.children = prune_block(fn.body, keep);

  for (const StatementRef& s : subtree_statements(fn.body)) {
    if (!keep.count(s.stmt->node_id)) continue;
    fragment.statements.push_back(prune_statement(*s.stmt, keep));
    fragment.origin.push_back(statement_origin(*s.stmt));
  }

  if (!fragment.origin.empty()) {
    SourceLocation span = fragment.origin.front();
    span.line_end = fragment.origin.back().line_end;
    span.col_end = fragment.origin.back().col_end;
    fragment.tree.loc = span;
  }
  return fragment;
}

SliceFragment isolate(const FunctionDef& fn, const PointerRecord& target,
                      const TaintOptions& options) {
  DependencyGraph graph = build_dependency_graph(fn, target, options);
  PointerRelatedVars related = taint_pointer_related(graph, target, fn);
  return isolate(fn, related);
}

}  // namespace twinfinder
