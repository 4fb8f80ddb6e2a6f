#include "twinfinder/pointer_analysis.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace twinfinder {

TargetNotUsed::TargetNotUsed(const std::string& target)
    : Error("target pointer never used: " + target) {}

const char* to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::Global: return "global";
    case DeclKind::Local: return "local";
    case DeclKind::StructMember: return "struct_member";
    case DeclKind::Param: return "param";
  }
  return "?";
}

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Assignment: return "assignment";
    case EdgeKind::ArrayIndex: return "array_index";
    case EdgeKind::CallParam: return "call_param";
    case EdgeKind::LoopBound: return "loop_bound";
  }
  return "?";
}

const char* to_string(VarRole role) {
  switch (role) {
    case VarRole::Index: return "index";
    case VarRole::Bound: return "bound";
    case VarRole::LengthSource: return "length_source";
    case VarRole::BaseAlias: return "base_alias";
    case VarRole::Other: return "other";
  }
  return "?";
}

std::string DependencyGraph::dump() const {
  std::ostringstream os;
  for (const Edge& e : edges) os << e.from << " -> " << e.to << " [" << to_string(e.kind) << "]\n";
  return os.str();
}

std::string expr_path(const AstNode& expr) {
  switch (expr.kind) {
    case NodeKind::ID:
      return expr.token;
    case NodeKind::StructRef: {
      std::string base = expr_path(expr.children[0]);
      if (base.empty()) base = lvalue_base_path(expr.children[0]);
      if (base.empty()) return {};
      return base + "->" + expr.children[1].token;
    }
    case NodeKind::Call: {
      std::string callee = expr_path(expr.children[0]);
      if (callee.empty()) return {};
      std::string path = callee + "(";
      for (std::size_t i = 1; i < expr.children.size(); ++i) {
        if (i > 1) path += ",";
        const AstNode& arg = expr.children[i];
        std::string ap = expr_path(arg);
        if (ap.empty() && arg.kind == NodeKind::Constant) ap = arg.token;
        path += ap.empty() ? "<expr>" : ap;
      }
      return path + ")";
    }
    default:
      return {};
  }
}

std::string lvalue_base_path(const AstNode& expr) {
  switch (expr.kind) {
    case NodeKind::ID:
      return expr.token;
    case NodeKind::StructRef: {
      std::string base = lvalue_base_path(expr.children[0]);
      if (base.empty()) return {};
      return base + "->" + expr.children[1].token;
    }
    case NodeKind::ArrayRef:
    case NodeKind::Deref:
    case NodeKind::Cast:
      return lvalue_base_path(expr.children[0]);
    case NodeKind::Call:
      return expr_path(expr);
    default:
      return {};
  }
}

namespace {

bool is_path_kind(NodeKind k) {
  return k == NodeKind::ID || k == NodeKind::StructRef || k == NodeKind::Call;
}

/// Paths the value of `expr` is derived from. Array subscripts select where
/// a value comes from, so indices are excluded here; the array_index edges
/// carry that dependency.
void value_paths(const AstNode& expr, std::vector<std::string>& out) {
  switch (expr.kind) {
    case NodeKind::ID:
    case NodeKind::StructRef:
    case NodeKind::Call: {
      std::string p = expr_path(expr);
      if (!p.empty()) out.push_back(p);
      break;
    }
    case NodeKind::ArrayRef:
    case NodeKind::Deref:
    case NodeKind::Cast:
    case NodeKind::UnaryOp:
    case NodeKind::AddressOf:
      if (!expr.children.empty()) value_paths(expr.children[0], out);
      break;
    case NodeKind::BinaryOp:
    case NodeKind::TernaryOp:
      for (const AstNode& c : expr.children) value_paths(c, out);
      break;
    case NodeKind::Assignment:
      if (expr.children.size() == 2) value_paths(expr.children[1], out);
      break;
    default:
      break;
  }
}

/// Every identifier path occurring anywhere in `expr`, outermost first.
void all_paths(const AstNode& expr, std::vector<std::string>& out) {
  if (is_path_kind(expr.kind)) {
    std::string p = expr_path(expr);
    if (!p.empty()) out.push_back(p);
    if (expr.kind == NodeKind::Call) {
      for (std::size_t i = 1; i < expr.children.size(); ++i) all_paths(expr.children[i], out);
    }
    return;  // StructRef bases and callee names are part of the path itself
  }
  for (const AstNode& c : expr.children) all_paths(c, out);
}

struct ArrayUse {
  std::string base;
  std::string index_path;
  int depth = 0;
  SourceLocation at;
};

struct CallUse {
  std::string callee;
  std::string call_path;
  std::vector<std::string> arg_paths;
};

struct AliasPair {
  std::string lhs;
  std::string rhs;
};

/// Single walk over a function body collecting everything the graph and the
/// role assignment need.
struct FunctionFacts {
  DependencyGraph graph;
  std::vector<ArrayUse> array_uses;
  std::vector<CallUse> call_uses;
  std::vector<AliasPair> direct_aliases;
  std::vector<std::string> occurrence_order;  // paths in document order
  std::map<std::string, SourceLocation> first_seen;
};

class FactCollector {
 public:
  FactCollector(const FunctionDef& fn, const TaintOptions& options)
      : fn_(fn), options_(options) {
    facts_.graph.function = fn.name;
    walk_stmt(fn.body);
  }

  FunctionFacts take() { return std::move(facts_); }

 private:
  void note_path(const std::string& path, const SourceLocation& at) {
    if (path.empty()) return;
    facts_.graph.nodes.insert(path);
    if (!facts_.first_seen.count(path)) {
      facts_.first_seen[path] = at;
      facts_.occurrence_order.push_back(path);
    }
    // A member path also names its base prefixes.
    std::size_t pos = path.rfind("->");
    if (pos != std::string::npos && path.find('(') == std::string::npos)
      note_path(path.substr(0, pos), at);
  }

  void add_edge(const std::string& from, const std::string& to, EdgeKind kind) {
    if (from.empty() || to.empty() || from == to) return;
    facts_.graph.edges.insert({from, to, kind});
  }

  int array_depth(const AstNode& base) const {
    const AstNode* n = &base;
    int depth = 0;
    while (n->kind == NodeKind::ArrayRef || n->kind == NodeKind::Cast) {
      if (n->kind == NodeKind::ArrayRef) ++depth;
      n = &n->children[0];
    }
    return depth;
  }

  void walk_expr(const AstNode& expr) {
    if (is_path_kind(expr.kind)) note_path(expr_path(expr), expr.loc);

    switch (expr.kind) {
      case NodeKind::Assignment: {
        const AstNode& lhs = expr.children[0];
        const AstNode& rhs = expr.children[1];
        std::string target = lvalue_base_path(lhs);
        note_path(target, lhs.loc);
        bool memory_write = lhs.kind == NodeKind::ArrayRef || lhs.kind == NodeKind::Deref;
        if (!memory_write || options_.taint_stores_through_pointer) {
          std::vector<std::string> sources;
          value_paths(rhs, sources);
          for (const std::string& s : sources) {
            note_path(s, rhs.loc);
            add_edge(s, target, EdgeKind::Assignment);
          }
          if (rhs.kind == NodeKind::ID || rhs.kind == NodeKind::StructRef) {
            std::string rp = expr_path(rhs);
            if (!rp.empty()) facts_.direct_aliases.push_back({target, rp});
          }
        }
        break;
      }
      case NodeKind::Decl: {
        note_path(expr.token, expr.loc);
        if (!expr.children.empty()) {
          std::vector<std::string> sources;
          value_paths(expr.children[0], sources);
          for (const std::string& s : sources) {
            note_path(s, expr.children[0].loc);
            add_edge(s, expr.token, EdgeKind::Assignment);
          }
        }
        break;
      }
      case NodeKind::ArrayRef: {
        std::string base = lvalue_base_path(expr.children[0]);
        note_path(base, expr.loc);
        std::vector<std::string> idx;
        all_paths(expr.children[1], idx);
        for (const std::string& i : idx) {
          note_path(i, expr.children[1].loc);
          add_edge(i, base, EdgeKind::ArrayIndex);
          facts_.array_uses.push_back({base, i, array_depth(expr.children[0]), expr.children[1].loc});
        }
        break;
      }
      case NodeKind::Call: {
        CallUse use;
        use.callee = expr_path(expr.children[0]);
        use.call_path = expr_path(expr);
        for (std::size_t i = 1; i < expr.children.size(); ++i) {
          std::vector<std::string> args;
          all_paths(expr.children[i], args);
          for (const std::string& a : args) {
            note_path(a, expr.children[i].loc);
            add_edge(a, use.call_path, EdgeKind::CallParam);
            use.arg_paths.push_back(a);
          }
        }
        facts_.call_uses.push_back(std::move(use));
        break;
      }
      default:
        break;
    }

    for (const AstNode& c : expr.children) walk_expr(c);
  }

  void add_loop_bound_edges(const AstNode& cond, const std::vector<std::string>& inductions) {
    std::vector<std::string> bounds;
    value_paths(cond, bounds);
    for (const std::string& b : bounds) {
      if (std::find(inductions.begin(), inductions.end(), b) != inductions.end()) continue;
      for (const std::string& iv : inductions) add_edge(b, iv, EdgeKind::LoopBound);
    }
  }

  void assigned_paths(const AstNode& node, std::vector<std::string>& out) const {
    if (node.kind == NodeKind::Assignment)
      out.push_back(lvalue_base_path(node.children[0]));
    if (node.kind == NodeKind::UnaryOp && (node.token == "++" || node.token == "--"))
      out.push_back(lvalue_base_path(node.children[0]));
    if (node.kind == NodeKind::Decl && !node.children.empty()) out.push_back(node.token);
    for (const AstNode& c : node.children) assigned_paths(c, out);
  }

  void walk_stmt(const AstNode& stmt) {
    switch (stmt.kind) {
      case NodeKind::Compound:
        for (const AstNode& c : stmt.children) walk_stmt(c);
        return;
      case NodeKind::For: {
        const AstNode& init = stmt.children[0];
        walk_expr(init);
        walk_expr(stmt.children[1]);
        walk_expr(stmt.children[2]);
        std::vector<std::string> inductions;
        if (init.kind == NodeKind::Assignment)
          inductions.push_back(lvalue_base_path(init.children[0]));
        else if (init.kind == NodeKind::Decl)
          inductions.push_back(init.token);
        assigned_paths(stmt.children[2], inductions);
        add_loop_bound_edges(stmt.children[1], inductions);
        walk_stmt(stmt.children[3]);
        return;
      }
      case NodeKind::While: {
        walk_expr(stmt.children[0]);
        std::vector<std::string> inductions;
        assigned_paths(stmt.children[1], inductions);
        std::vector<std::string> cond_paths;
        all_paths(stmt.children[0], cond_paths);
        std::vector<std::string> loop_vars;
        for (const std::string& p : cond_paths)
          if (std::find(inductions.begin(), inductions.end(), p) != inductions.end())
            loop_vars.push_back(p);
        add_loop_bound_edges(stmt.children[0], loop_vars);
        walk_stmt(stmt.children[1]);
        return;
      }
      case NodeKind::If:
        walk_expr(stmt.children[0]);
        walk_stmt(stmt.children[1]);
        if (stmt.children.size() == 3) walk_stmt(stmt.children[2]);
        return;
      case NodeKind::Switch:
        walk_expr(stmt.children[0]);
        for (std::size_t i = 1; i < stmt.children.size(); ++i) {
          for (const AstNode& c : stmt.children[i].children) walk_stmt(c);
        }
        return;
      case NodeKind::Return:
        if (!stmt.children.empty()) walk_expr(stmt.children[0]);
        return;
      case NodeKind::Break:
      case NodeKind::Continue:
        return;
      default:
        walk_expr(stmt);
        return;
    }
  }

  const FunctionDef& fn_;
  TaintOptions options_;
  FunctionFacts facts_;
};

bool length_like_callee(const std::string& callee) {
  std::string lower;
  lower.reserve(callee.size());
  for (char c : callee) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower.find("len") != std::string::npos || lower.find("size") != std::string::npos ||
         lower.find("count") != std::string::npos;
}

void add_record(std::vector<PointerRecord>& records, PointerRecord rec) {
  for (const PointerRecord& r : records)
    if (r.name == rec.name && r.owning_function == rec.owning_function) return;
  records.push_back(std::move(rec));
}

void infer_pointer_uses(const AstNode& node, const FunctionDef& fn,
                        const std::set<std::string>& declared,
                        std::vector<PointerRecord>& records) {
  if (node.kind == NodeKind::ArrayRef || node.kind == NodeKind::Deref) {
    std::string base = lvalue_base_path(node.children[0]);
    if (!base.empty() && base.find('(') == std::string::npos) {
      if (base.find("->") != std::string::npos) {
        add_record(records, {base, DeclKind::StructMember, fn.name, node.loc});
      } else if (!declared.count(base)) {
        add_record(records, {base, DeclKind::Global, "", node.loc});
      }
    }
  }
  for (const AstNode& c : node.children) infer_pointer_uses(c, fn, declared, records);
}

}  // namespace

std::vector<PointerRecord> select_pointers(const TranslationUnit& unit) {
  std::vector<PointerRecord> records;

  for (const DeclInfo& g : unit.globals)
    if (g.is_pointer || g.is_array) add_record(records, {g.name, DeclKind::Global, "", g.loc});

  for (const FunctionDef& fn : unit.functions) {
    for (const auto& p : fn.params)
      if (p.is_pointer) add_record(records, {p.name, DeclKind::Param, fn.name, fn.loc});
    for (const DeclInfo& d : fn.local_decls)
      if (d.is_pointer || d.is_array) add_record(records, {d.name, DeclKind::Local, fn.name, d.loc});

    std::set<std::string> declared;
    for (const auto& p : fn.params) declared.insert(p.name);
    for (const DeclInfo& d : fn.local_decls) declared.insert(d.name);
    for (const DeclInfo& g : unit.globals) declared.insert(g.name);
    infer_pointer_uses(fn.body, fn, declared, records);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const PointerRecord& a, const PointerRecord& b) {
                     return std::tie(a.decl_loc.file, a.decl_loc.line_begin,
                                     a.decl_loc.col_begin, a.name) <
                            std::tie(b.decl_loc.file, b.decl_loc.line_begin,
                                     b.decl_loc.col_begin, b.name);
                   });
  return records;
}

std::vector<PointerRecord> select_pointers(const std::vector<TranslationUnit>& units) {
  std::vector<PointerRecord> all;
  for (const TranslationUnit& unit : units)
    for (PointerRecord& r : select_pointers(unit)) add_record(all, std::move(r));
  return all;
}

DependencyGraph build_dependency_graph(const FunctionDef& fn, const PointerRecord& target,
                                       const TaintOptions& options) {
  FactCollector collector(fn, options);
  FunctionFacts facts = collector.take();
  if (!facts.graph.nodes.count(target.name)) throw TargetNotUsed(target.name);
  return std::move(facts.graph);
}

PointerRelatedVars taint_pointer_related(const DependencyGraph& graph,
                                         const PointerRecord& target, const FunctionDef& fn) {
  // The graph alone carries the edges; roles need the positional facts, so
  // re-collect them (the collector is deterministic and cheap).
  FactCollector collector(fn, TaintOptions{});
  FunctionFacts facts = collector.take();

  std::map<std::string, std::vector<std::string>> fwd, bwd;
  for (const auto& e : graph.edges) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }

  std::set<std::string> tainted;
  std::deque<std::string> work{target.name};
  auto push = [&](const std::string& p) {
    if (!p.empty() && tainted.insert(p).second) work.push_back(p);
  };
  tainted.insert(target.name);
  while (!work.empty()) {
    std::string v = work.front();
    work.pop_front();
    for (const std::string& n : fwd[v]) push(n);
    for (const std::string& n : bwd[v]) push(n);
    std::size_t pos = v.rfind("->");
    if (pos != std::string::npos && v.find('(') == std::string::npos) push(v.substr(0, pos));
  }

  PointerRelatedVars related;
  related.pointer = target;
  for (const std::string& p : facts.occurrence_order)
    if (tainted.count(p)) related.vars.push_back(p);
  // Paths only reachable through prefix expansion may never occur standalone.
  for (const std::string& p : tainted)
    if (std::find(related.vars.begin(), related.vars.end(), p) == related.vars.end())
      related.vars.push_back(p);

  for (const std::string& v : related.vars) related.roles[v] = VarRole::Other;
  related.roles[target.name] = VarRole::BaseAlias;

  for (const AliasPair& a : facts.direct_aliases) {
    if (a.lhs == target.name && related.roles.count(a.rhs))
      related.roles[a.rhs] = VarRole::BaseAlias;
    if (a.rhs == target.name && related.roles.count(a.lhs))
      related.roles[a.lhs] = VarRole::BaseAlias;
  }
  for (const CallUse& c : facts.call_uses) {
    if (!length_like_callee(c.callee)) continue;
    for (const std::string& a : c.arg_paths)
      if (related.roles.count(a) && related.roles[a] == VarRole::Other)
        related.roles[a] = VarRole::LengthSource;
  }
  for (const auto& e : graph.edges) {
    if (e.kind != EdgeKind::LoopBound) continue;
    if (!tainted.count(e.to) || !tainted.count(e.from)) continue;
    VarRole& r = related.roles[e.from];
    if (r == VarRole::Other || r == VarRole::LengthSource || r == VarRole::BaseAlias)
      r = e.from == target.name ? r : VarRole::Bound;
  }
  for (const ArrayUse& u : facts.array_uses) {
    if (!tainted.count(u.base) || !tainted.count(u.index_path)) continue;
    if (u.index_path != target.name) related.roles[u.index_path] = VarRole::Index;
    if (u.base == target.name && !related.index_uses.count(u.index_path))
      related.index_uses[u.index_path] = IndexUse{u.depth, u.at};
  }

  return related;
}

}  // namespace twinfinder
