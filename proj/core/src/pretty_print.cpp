#include "twinfinder/pretty_print.hpp"

#include <sstream>

namespace twinfinder {

namespace {

void print_expr(const AstNode& n, std::ostream& os);

void print_args(const AstNode& call, std::ostream& os) {
  for (std::size_t i = 1; i < call.children.size(); ++i) {
    if (i > 1) os << ", ";
    print_expr(call.children[i], os);
  }
}

void print_expr(const AstNode& n, std::ostream& os) {
  switch (n.kind) {
    case NodeKind::ID:
    case NodeKind::Constant:
      os << n.token;
      break;
    case NodeKind::ArrayRef:
      print_expr(n.children[0], os);
      os << '[';
      print_expr(n.children[1], os);
      os << ']';
      break;
    case NodeKind::StructRef:
      print_expr(n.children[0], os);
      os << "->" << n.children[1].token;
      break;
    case NodeKind::Assignment:
      print_expr(n.children[0], os);
      os << " = ";
      print_expr(n.children[1], os);
      break;
    case NodeKind::BinaryOp:
      os << '(';
      print_expr(n.children[0], os);
      os << ' ' << n.token << ' ';
      print_expr(n.children[1], os);
      os << ')';
      break;
    case NodeKind::UnaryOp:
      os << n.token << '(';
      print_expr(n.children[0], os);
      os << ')';
      break;
    case NodeKind::Deref:
      os << "*(";
      print_expr(n.children[0], os);
      os << ')';
      break;
    case NodeKind::AddressOf:
      os << "&(";
      print_expr(n.children[0], os);
      os << ')';
      break;
    case NodeKind::Cast:
      os << '(' << n.token << ")(";
      print_expr(n.children[0], os);
      os << ')';
      break;
    case NodeKind::TernaryOp:
      os << '(';
      print_expr(n.children[0], os);
      os << " ? ";
      print_expr(n.children[1], os);
      os << " : ";
      print_expr(n.children[2], os);
      os << ')';
      break;
    case NodeKind::Call:
      print_expr(n.children[0], os);
      os << '(';
      print_args(n, os);
      os << ')';
      break;
    default:
      os << "/*?*/";
      break;
  }
}

void print_stmt(const AstNode& n, std::ostream& os, int indent);

void indent_to(std::ostream& os, int indent) {
  for (int i = 0; i < indent; ++i) os << "    ";
}

void print_body(const AstNode& body, std::ostream& os, int indent) {
  if (body.kind == NodeKind::Compound) {
    os << " {\n";
    for (const AstNode& c : body.children) print_stmt(c, os, indent + 1);
    indent_to(os, indent);
    os << "}\n";
  } else {
    os << "\n";
    print_stmt(body, os, indent + 1);
  }
}

void print_stmt(const AstNode& n, std::ostream& os, int indent) {
  indent_to(os, indent);
  switch (n.kind) {
    case NodeKind::Compound:
      os << "{\n";
      for (const AstNode& c : n.children) print_stmt(c, os, indent + 1);
      indent_to(os, indent);
      os << "}\n";
      return;
    case NodeKind::For:
      os << "for (";
      if (n.children[0].kind == NodeKind::Decl) {
        os << "int " << n.children[0].token;
        if (!n.children[0].children.empty()) {
          os << " = ";
          print_expr(n.children[0].children[0], os);
        }
      } else {
        print_expr(n.children[0], os);
      }
      os << "; ";
      print_expr(n.children[1], os);
      os << "; ";
      print_expr(n.children[2], os);
      os << ")";
      print_body(n.children[3], os, indent);
      return;
    case NodeKind::While:
      os << "while (";
      print_expr(n.children[0], os);
      os << ")";
      print_body(n.children[1], os, indent);
      return;
    case NodeKind::If:
      os << "if (";
      print_expr(n.children[0], os);
      os << ")";
      print_body(n.children[1], os, indent);
      if (n.children.size() == 3) {
        indent_to(os, indent);
        os << "else";
        print_body(n.children[2], os, indent);
      }
      return;
    case NodeKind::Switch:
      os << "switch (";
      print_expr(n.children[0], os);
      os << ") {\n";
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        const AstNode& arm = n.children[i];
        indent_to(os, indent);
        if (arm.token == "default")
          os << "default:\n";
        else
          os << "case " << arm.token << ":\n";
        for (const AstNode& c : arm.children) print_stmt(c, os, indent + 1);
      }
      indent_to(os, indent);
      os << "}\n";
      return;
    case NodeKind::Return:
      os << "return";
      if (!n.children.empty()) {
        os << ' ';
        print_expr(n.children[0], os);
      }
      os << ";\n";
      return;
    case NodeKind::Break:
      os << "break;\n";
      return;
    case NodeKind::Continue:
      os << "continue;\n";
      return;
    case NodeKind::Decl:
      os << "int " << n.token;
      if (!n.children.empty()) {
        os << " = ";
        print_expr(n.children[0], os);
      }
      os << ";\n";
      return;
    default:
      print_expr(n, os);
      os << ";\n";
      return;
  }
}

}  // namespace

std::string pretty_print(const AstNode& node, int indent) {
  std::ostringstream os;
  if (node.kind == NodeKind::Compound) {
    for (const AstNode& c : node.children) print_stmt(c, os, indent);
  } else if (is_control_statement(node.kind) || node.kind == NodeKind::Return ||
             node.kind == NodeKind::Decl || node.kind == NodeKind::Break ||
             node.kind == NodeKind::Continue) {
    print_stmt(node, os, indent);
  } else {
    print_expr(node, os);
  }
  return os.str();
}

std::string pretty_print(const FunctionDef& fn) {
  std::ostringstream os;
  os << (fn.return_type.empty() ? "void" : fn.return_type) << ' ' << fn.name << '(';
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    if (i > 0) os << ", ";
    const auto& p = fn.params[i];
    os << (p.type.empty() ? "int" : p.type) << ' ' << (p.is_pointer ? "*" : "") << p.name;
  }
  if (fn.params.empty()) os << "void";
  os << ")\n{\n";
  os << pretty_print(fn.body, 1);
  os << "}\n";
  return os.str();
}

}  // namespace twinfinder
