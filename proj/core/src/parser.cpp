#include "twinfinder/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace twinfinder {

ParseError::ParseError(SourceLocation at, std::string expected_what)
    : Error(at.to_string() + ": expected " + expected_what),
      loc(std::move(at)),
      expected(std::move(expected_what)) {}

UnsupportedConstruct::UnsupportedConstruct(SourceLocation at, std::string construct_name)
    : Error(at.to_string() + ": unsupported construct: " + construct_name),
      loc(std::move(at)),
      construct(std::move(construct_name)) {}

std::string SourceLocation::to_string() const {
  return file + ":" + std::to_string(line_begin) + ":" + std::to_string(col_begin);
}

namespace {

enum class TokKind { Ident, Number, String, Char, Punct, Eof };

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int line = 1, col = 1;
  int end_line = 1, end_col = 1;

  bool is(std::string_view s) const { return text == s; }
};

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "auto", "break", "case", "char", "const", "continue", "default", "do",
      "double", "else", "enum", "extern", "float", "for", "goto", "if",
      "inline", "int", "long", "register", "restrict", "return", "short",
      "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
      "unsigned", "void", "volatile", "while"};
  return kw;
}

bool is_base_type_keyword(const std::string& s) {
  static const std::unordered_set<std::string> types = {
      "void", "char", "short", "int", "long", "float", "double",
      "signed", "unsigned", "struct", "union", "enum"};
  return types.count(s) > 0;
}

bool is_decl_qualifier(const std::string& s) {
  static const std::unordered_set<std::string> quals = {
      "const", "static", "extern", "register", "volatile", "inline", "restrict", "auto"};
  return quals.count(s) > 0;
}

// Well-known fixed-width / libc typedef names accepted without declaration.
bool is_builtin_typedef(const std::string& s) {
  static const std::unordered_set<std::string> names = {
      "int8",   "int16",   "int32",   "int64",  "uint8",  "uint16",
      "uint32", "uint64",  "size_t",  "ssize_t", "FILE",  "float32",
      "float64", "intptr_t", "uintptr_t", "ptrdiff_t", "bool"};
  return names.count(s) > 0;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string filename)
      : text_(text), file_(std::move(filename)) {
    tokenize();
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  std::size_t mark() const { return pos_; }
  void rewind(std::size_t m) { pos_ = m; }

  const std::string& file() const { return file_; }

 private:
  void tokenize();
  SourceLocation here(int line, int col) const {
    return SourceLocation{file_, line, line, col, col};
  }

  std::string_view text_;
  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void Lexer::tokenize() {
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = text_.size();
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < n) {
    char c = text_[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && text_[i + 1] == '/') {
      while (i < n && text_[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && text_[i + 1] == '*') {
      advance(2);
      while (i + 1 < n && !(text_[i] == '*' && text_[i + 1] == '/')) advance(1);
      advance(2);
      continue;
    }
    if (c == '#') {
      throw ParseError(here(line, col), "preprocessed source (no '#' directives)");
    }

    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
      t.kind = TokKind::Ident;
      t.text = std::string(text_.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text_[i + 1])))) {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '.' ||
                       ((text_[j] == '+' || text_[j] == '-') && j > i &&
                        (text_[j - 1] == 'e' || text_[j - 1] == 'E'))))
        ++j;
      t.kind = TokKind::Number;
      t.text = std::string(text_.substr(i, j - i));
      advance(j - i);
    } else if (c == '"' || c == '\'') {
      char quote = c;
      std::size_t j = i + 1;
      while (j < n && text_[j] != quote) {
        if (text_[j] == '\\' && j + 1 < n) ++j;
        ++j;
      }
      if (j >= n) throw ParseError(here(line, col), "closing quote");
      t.kind = quote == '"' ? TokKind::String : TokKind::Char;
      t.text = std::string(text_.substr(i, j + 1 - i));
      advance(j + 1 - i);
    } else {
      static const char* three[] = {"<<=", ">>=", "..."};
      static const char* two[] = {"->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
                                  "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|="};
      std::string_view rest = text_.substr(i);
      std::string match;
      for (const char* op : three)
        if (rest.substr(0, 3) == op) match = op;
      if (match.empty())
        for (const char* op : two)
          if (rest.substr(0, 2) == op) match = op;
      if (match.empty()) match = std::string(1, c);
      t.kind = TokKind::Punct;
      t.text = match;
      advance(match.size());
    }
    t.end_line = line;
    t.end_col = col > 1 ? col - 1 : 1;
    tokens_.push_back(std::move(t));
  }

  Token eof;
  eof.kind = TokKind::Eof;
  eof.line = line;
  eof.col = col;
  eof.end_line = line;
  eof.end_col = col;
  tokens_.push_back(std::move(eof));
}

class Parser {
 public:
  Parser(std::string_view text, std::string filename)
      : lex_(text, std::move(filename)) {}

  TranslationUnit parse(std::vector<ParseDiagnostic>* diags);

 private:
  SourceLocation loc_of(const Token& t) const {
    return SourceLocation{lex_.file(), t.line, t.end_line, t.col, t.end_col};
  }
  SourceLocation span(const SourceLocation& a, const SourceLocation& b) const {
    SourceLocation s = a;
    s.line_end = b.line_end;
    s.col_end = b.col_end;
    return s;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(loc_of(lex_.peek()), expected);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw UnsupportedConstruct(loc_of(lex_.peek()), what);
  }
  Token expect(std::string_view punct) {
    if (!lex_.peek().is(punct)) fail("'" + std::string(punct) + "'");
    return lex_.next();
  }

  bool is_type_name(const Token& t) const {
    if (t.kind != TokKind::Ident) return false;
    return is_base_type_keyword(t.text) || is_decl_qualifier(t.text) ||
           is_builtin_typedef(t.text) || typedef_names_.count(t.text) > 0;
  }

  // --- top level ---
  void parse_top_level(TranslationUnit& unit);
  void parse_typedef();
  void skip_braced_block();
  FunctionDef parse_function_rest(std::string type_text, bool ret_pointer,
                                  const Token& name_tok, SourceLocation start);

  // --- declarations ---
  struct TypeSpec {
    std::string text;
    SourceLocation loc;
  };
  TypeSpec parse_type_specifiers();
  std::vector<AstNode> parse_declaration(TypeSpec type, std::vector<DeclInfo>& sink);

  // --- statements ---
  AstNode parse_compound();
  AstNode parse_statement();
  bool looks_like_declaration() const;

  // --- expressions ---
  AstNode parse_expression();  // comma not supported inside expressions
  AstNode parse_assignment();
  AstNode parse_ternary();
  AstNode parse_binary(int min_prec);
  AstNode parse_unary();
  AstNode parse_postfix();
  AstNode parse_primary();
  bool at_cast() const;

  Lexer lex_;
  std::unordered_set<std::string> typedef_names_;
  FunctionDef* current_fn_ = nullptr;
  std::vector<DeclInfo> scratch_decls_;
};

AstNode make_node(NodeKind kind, SourceLocation loc, std::string token = {}) {
  AstNode n;
  n.kind = kind;
  n.loc = std::move(loc);
  n.token = std::move(token);
  return n;
}

SourceLocation tree_span(const AstNode& n) {
  SourceLocation s = n.loc;
  for (const AstNode& c : n.children) {
    if (c.loc.line_begin < s.line_begin ||
        (c.loc.line_begin == s.line_begin && c.loc.col_begin < s.col_begin)) {
      s.line_begin = c.loc.line_begin;
      s.col_begin = c.loc.col_begin;
    }
    if (c.loc.line_end > s.line_end ||
        (c.loc.line_end == s.line_end && c.loc.col_end > s.col_end)) {
      s.line_end = c.loc.line_end;
      s.col_end = c.loc.col_end;
    }
  }
  return s;
}

// Expands a node's span to cover its children; applied bottom-up by each
// production so the location-containment invariant holds by construction.
AstNode seal(AstNode n) {
  n.loc = tree_span(n);
  return n;
}

TranslationUnit Parser::parse(std::vector<ParseDiagnostic>* diags) {
  TranslationUnit unit;
  unit.filename = lex_.file();
  while (lex_.peek().kind != TokKind::Eof) {
    std::size_t start = lex_.mark();
    try {
      parse_top_level(unit);
    } catch (const Error& e) {
      if (!diags) throw;
      ParseDiagnostic d;
      d.message = e.what();
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) d.loc = pe->loc;
      if (auto* uc = dynamic_cast<const UnsupportedConstruct*>(&e)) {
        d.loc = uc->loc;
        d.unsupported = true;
      }
      diags->push_back(std::move(d));
      // Skip past the failed construct: to the end of a balanced brace
      // block or the next top-level semicolon.
      lex_.rewind(start);
      int depth = 0;
      while (lex_.peek().kind != TokKind::Eof) {
        const Token& t = lex_.next();
        if (t.is("{")) ++depth;
        if (t.is("}")) {
          if (--depth <= 0 && depth != -1) break;
        }
        if (t.is(";") && depth == 0) break;
      }
    }
  }
  for (FunctionDef& fn : unit.functions) assign_node_ids(fn.body);
  return unit;
}

void Parser::parse_top_level(TranslationUnit& unit) {
  const Token& t = lex_.peek();
  if (t.is("typedef")) {
    parse_typedef();
    return;
  }
  if (t.is("struct") || t.is("union") || t.is("enum")) {
    // Tag definition without declarator: `struct X { ... };`
    if (lex_.peek(1).kind == TokKind::Ident && !is_type_name(lex_.peek(1)) &&
        lex_.peek(2).is("{")) {
      lex_.next();
      lex_.next();
      skip_braced_block();
      expect(";");
      return;
    }
    if (lex_.peek(1).is("{")) {
      lex_.next();
      skip_braced_block();
      expect(";");
      return;
    }
  }
  if (!is_type_name(t)) fail("type name at top level");

  TypeSpec type = parse_type_specifiers();
  bool pointer = false;
  while (lex_.peek().is("*")) {
    pointer = true;
    lex_.next();
  }
  if (lex_.peek().kind != TokKind::Ident) fail("declarator name");
  Token name = lex_.next();
  if (lex_.peek().is("(")) {
    unit.functions.push_back(parse_function_rest(type.text, pointer, name, type.loc));
    return;
  }

  // Global variable declaration(s).
  DeclInfo info;
  info.name = name.text;
  info.type_text = type.text;
  info.is_pointer = pointer;
  info.loc = span(type.loc, loc_of(name));
  for (;;) {
    while (lex_.peek().is("[")) {
      lex_.next();
      info.is_array = true;
      while (!lex_.peek().is("]")) {
        if (lex_.peek().kind == TokKind::Eof) fail("']'");
        lex_.next();
      }
      expect("]");
    }
    if (lex_.peek().is("=")) {  // global initializers are consumed, not modeled
      lex_.next();
      int depth = 0;
      while (!(depth == 0 && (lex_.peek().is(",") || lex_.peek().is(";")))) {
        if (lex_.peek().kind == TokKind::Eof) fail("';'");
        const Token& tok = lex_.next();
        if (tok.is("{") || tok.is("(")) ++depth;
        if (tok.is("}") || tok.is(")")) --depth;
      }
    }
    unit.globals.push_back(info);
    if (lex_.peek().is(",")) {
      lex_.next();
      info = DeclInfo{};
      info.type_text = type.text;
      while (lex_.peek().is("*")) {
        info.is_pointer = true;
        lex_.next();
      }
      if (lex_.peek().kind != TokKind::Ident) fail("declarator name");
      Token n2 = lex_.next();
      info.name = n2.text;
      info.loc = loc_of(n2);
      continue;
    }
    expect(";");
    break;
  }
}

void Parser::parse_typedef() {
  lex_.next();  // typedef
  // Register the last identifier before ';' as a type name; skip the rest.
  std::string last_ident;
  int depth = 0;
  while (!(depth == 0 && lex_.peek().is(";"))) {
    if (lex_.peek().kind == TokKind::Eof) fail("';' after typedef");
    const Token& t = lex_.next();
    if (t.is("{") || t.is("(") || t.is("[")) ++depth;
    if (t.is("}") || t.is(")") || t.is("]")) --depth;
    if (t.kind == TokKind::Ident && depth == 0 && !keywords().count(t.text))
      last_ident = t.text;
  }
  expect(";");
  if (!last_ident.empty()) typedef_names_.insert(last_ident);
}

void Parser::skip_braced_block() {
  expect("{");
  int depth = 1;
  while (depth > 0) {
    if (lex_.peek().kind == TokKind::Eof) fail("'}'");
    const Token& t = lex_.next();
    if (t.is("{")) ++depth;
    if (t.is("}")) --depth;
  }
}

Parser::TypeSpec Parser::parse_type_specifiers() {
  TypeSpec spec;
  spec.loc = loc_of(lex_.peek());
  bool saw_base = false;
  for (;;) {
    const Token& t = lex_.peek();
    if (t.kind != TokKind::Ident) break;
    bool take = false;
    if (is_decl_qualifier(t.text)) {
      take = true;
    } else if (is_base_type_keyword(t.text)) {
      take = true;
      if (t.is("struct") || t.is("union") || t.is("enum")) {
        std::string head = t.text;
        lex_.next();
        if (lex_.peek().kind != TokKind::Ident) fail("struct/union/enum tag");
        Token tag = lex_.next();
        if (!spec.text.empty()) spec.text += ' ';
        spec.text += head + " " + tag.text;
        saw_base = true;
        continue;
      }
      if (!(t.is("signed") || t.is("unsigned") || t.is("long") || t.is("short")))
        saw_base = true;
    } else if (!saw_base && (is_builtin_typedef(t.text) || typedef_names_.count(t.text))) {
      take = true;
      saw_base = true;
    } else if (!saw_base && lex_.peek(1).kind == TokKind::Ident) {
      // Unknown name followed by another identifier: treat as a type name.
      take = true;
      saw_base = true;
    } else if (!saw_base && lex_.peek(1).is("*")) {
      take = true;
      saw_base = true;
    }
    if (!take) break;
    if (!spec.text.empty()) spec.text += ' ';
    spec.text += lex_.next().text;
  }
  if (spec.text.empty()) fail("type specifier");
  return spec;
}

FunctionDef Parser::parse_function_rest(std::string type_text, bool /*ret_pointer*/,
                                        const Token& name_tok, SourceLocation start) {
  FunctionDef fn;
  fn.name = name_tok.text;
  fn.return_type = std::move(type_text);
  expect("(");
  if (lex_.peek().is("void") && lex_.peek(1).is(")")) {
    lex_.next();
  }
  while (!lex_.peek().is(")")) {
    if (lex_.peek().is("...")) {
      lex_.next();
      break;
    }
    TypeSpec pt = parse_type_specifiers();
    FunctionDef::Param p;
    p.type = pt.text;
    while (lex_.peek().is("*")) {
      p.is_pointer = true;
      lex_.next();
    }
    if (lex_.peek().kind == TokKind::Ident) p.name = lex_.next().text;
    while (lex_.peek().is("[")) {
      p.is_pointer = true;  // array parameters decay
      lex_.next();
      while (!lex_.peek().is("]")) {
        if (lex_.peek().kind == TokKind::Eof) fail("']'");
        lex_.next();
      }
      expect("]");
    }
    if (!p.name.empty()) fn.params.push_back(std::move(p));
    if (lex_.peek().is(",")) lex_.next();
  }
  expect(")");
  if (lex_.peek().is(";")) unsupported("function declaration without body");

  current_fn_ = &fn;
  fn.body = parse_compound();
  current_fn_ = nullptr;
  fn.loc = span(start, fn.body.loc);
  return fn;
}

AstNode Parser::parse_compound() {
  Token open = expect("{");
  AstNode block = make_node(NodeKind::Compound, loc_of(open));
  while (!lex_.peek().is("}")) {
    if (lex_.peek().kind == TokKind::Eof) fail("'}'");
    if (lex_.peek().is(";")) {
      lex_.next();
      continue;
    }
    if (looks_like_declaration()) {
      TypeSpec type = parse_type_specifiers();
      std::vector<DeclInfo>& sink = current_fn_ ? current_fn_->local_decls : scratch_decls_;
      for (AstNode& d : parse_declaration(std::move(type), sink))
        block.children.push_back(std::move(d));
      continue;
    }
    block.children.push_back(parse_statement());
  }
  Token close = expect("}");
  block.loc = span(block.loc, loc_of(close));
  return block;
}

bool Parser::looks_like_declaration() const {
  const Token& t = lex_.peek();
  if (t.kind != TokKind::Ident) return false;
  if (is_base_type_keyword(t.text) || is_decl_qualifier(t.text)) return true;
  if (is_builtin_typedef(t.text) || typedef_names_.count(t.text)) {
    const Token& n1 = lex_.peek(1);
    return n1.kind == TokKind::Ident || n1.is("*");
  }
  if (keywords().count(t.text)) return false;
  // `ID ID` or `ID * ID` (with `;`, `=`, `,` or `[` after) reads as a
  // declaration of an unknown type.
  if (lex_.peek(1).kind == TokKind::Ident && !keywords().count(lex_.peek(1).text)) return true;
  std::size_t i = 1;
  while (lex_.peek(i).is("*")) ++i;
  if (i > 1 && lex_.peek(i).kind == TokKind::Ident) {
    const Token& after = lex_.peek(i + 1);
    return after.is(";") || after.is("=") || after.is(",") || after.is("[");
  }
  return false;
}

std::vector<AstNode> Parser::parse_declaration(TypeSpec type, std::vector<DeclInfo>& sink) {
  std::vector<AstNode> decls;
  for (;;) {
    DeclInfo info;
    info.type_text = type.text;
    SourceLocation dstart = loc_of(lex_.peek());
    while (lex_.peek().is("*")) {
      info.is_pointer = true;
      lex_.next();
    }
    if (lex_.peek().kind != TokKind::Ident) fail("declarator name");
    Token name = lex_.next();
    info.name = name.text;
    AstNode decl = make_node(NodeKind::Decl, span(dstart, loc_of(name)), name.text);
    while (lex_.peek().is("[")) {
      lex_.next();
      info.is_array = true;
      while (!lex_.peek().is("]")) {
        if (lex_.peek().kind == TokKind::Eof) fail("']'");
        lex_.next();
      }
      Token close = expect("]");
      decl.loc = span(decl.loc, loc_of(close));
    }
    if (lex_.peek().is("=")) {
      lex_.next();
      decl.children.push_back(parse_assignment());
      decl = seal(std::move(decl));
    }
    info.loc = decl.loc;
    sink.push_back(info);
    decls.push_back(std::move(decl));
    if (lex_.peek().is(",")) {
      lex_.next();
      continue;
    }
    expect(";");
    break;
  }
  return decls;
}

AstNode Parser::parse_statement() {
  const Token& t = lex_.peek();

  if (t.is("{")) return parse_compound();

  if (t.is("goto") || t.is("do") || t.is("sizeof")) unsupported(t.text);
  if (t.kind == TokKind::Ident && lex_.peek(1).is(":") && !t.is("default"))
    unsupported("label");

  if (t.is("for")) {
    Token kw = lex_.next();
    AstNode node = make_node(NodeKind::For, loc_of(kw));
    expect("(");
    if (lex_.peek().is(";")) unsupported("for loop without init clause");
    if (looks_like_declaration()) {
      TypeSpec type = parse_type_specifiers();
      std::vector<DeclInfo>& sink = current_fn_ ? current_fn_->local_decls : scratch_decls_;
      std::vector<AstNode> decls = parse_declaration(std::move(type), sink);
      if (decls.size() != 1) fail("single declarator in for-init");
      node.children.push_back(std::move(decls[0]));
    } else {
      node.children.push_back(parse_expression());
      expect(";");
    }
    if (lex_.peek().is(";")) unsupported("for loop without condition");
    node.children.push_back(parse_expression());
    expect(";");
    if (lex_.peek().is(")")) unsupported("for loop without increment");
    node.children.push_back(parse_expression());
    expect(")");
    node.children.push_back(parse_statement());
    return seal(std::move(node));
  }

  if (t.is("while")) {
    Token kw = lex_.next();
    AstNode node = make_node(NodeKind::While, loc_of(kw));
    expect("(");
    node.children.push_back(parse_expression());
    expect(")");
    node.children.push_back(parse_statement());
    return seal(std::move(node));
  }

  if (t.is("if")) {
    Token kw = lex_.next();
    AstNode node = make_node(NodeKind::If, loc_of(kw));
    expect("(");
    node.children.push_back(parse_expression());
    expect(")");
    node.children.push_back(parse_statement());
    if (lex_.peek().is("else")) {
      lex_.next();
      node.children.push_back(parse_statement());
    }
    return seal(std::move(node));
  }

  if (t.is("switch")) {
    Token kw = lex_.next();
    AstNode node = make_node(NodeKind::Switch, loc_of(kw));
    expect("(");
    node.children.push_back(parse_expression());
    expect(")");
    expect("{");
    while (!lex_.peek().is("}")) {
      AstNode arm;
      if (lex_.peek().is("case")) {
        Token ck = lex_.next();
        std::string label;
        while (!lex_.peek().is(":")) {
          if (lex_.peek().kind == TokKind::Eof) fail("':'");
          label += lex_.next().text;
        }
        expect(":");
        arm = make_node(NodeKind::Case, loc_of(ck), label);
      } else if (lex_.peek().is("default")) {
        Token ck = lex_.next();
        expect(":");
        arm = make_node(NodeKind::Case, loc_of(ck), "default");
      } else {
        fail("'case' or 'default'");
      }
      while (!lex_.peek().is("case") && !lex_.peek().is("default") && !lex_.peek().is("}")) {
        if (lex_.peek().kind == TokKind::Eof) fail("'}'");
        arm.children.push_back(parse_statement());
      }
      node.children.push_back(seal(std::move(arm)));
    }
    Token close = expect("}");
    node.loc = span(node.loc, loc_of(close));
    return node;
  }

  if (t.is("return")) {
    Token kw = lex_.next();
    AstNode node = make_node(NodeKind::Return, loc_of(kw));
    if (!lex_.peek().is(";")) node.children.push_back(parse_expression());
    Token sc = expect(";");
    node.loc = span(node.loc, loc_of(sc));
    return node;
  }

  if (t.is("break") || t.is("continue")) {
    Token kw = lex_.next();
    AstNode node =
        make_node(kw.is("break") ? NodeKind::Break : NodeKind::Continue, loc_of(kw));
    expect(";");
    return node;
  }

  AstNode expr = parse_expression();
  expect(";");
  return expr;
}

AstNode Parser::parse_expression() { return parse_assignment(); }

AstNode Parser::parse_assignment() {
  AstNode lhs = parse_ternary();
  const Token& t = lex_.peek();
  static const std::unordered_set<std::string> compound = {
      "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "^=", "|="};
  if (t.is("=")) {
    Token op = lex_.next();
    AstNode node = make_node(NodeKind::Assignment, loc_of(op), "=");
    node.children.push_back(std::move(lhs));
    node.children.push_back(parse_assignment());
    return seal(std::move(node));
  }
  if (t.kind == TokKind::Punct && compound.count(t.text)) {
    // `a op= b` desugars to `a = a op b`; the duplicated lhs keeps its span.
    Token op = lex_.next();
    AstNode rhs = parse_assignment();
    AstNode bin = make_node(NodeKind::BinaryOp, loc_of(op), op.text.substr(0, op.text.size() - 1));
    bin.children.push_back(lhs);
    bin.children.push_back(std::move(rhs));
    AstNode node = make_node(NodeKind::Assignment, loc_of(op), "=");
    node.children.push_back(std::move(lhs));
    node.children.push_back(seal(std::move(bin)));
    return seal(std::move(node));
  }
  return lhs;
}

AstNode Parser::parse_ternary() {
  AstNode cond = parse_binary(0);
  if (!lex_.peek().is("?")) return cond;
  Token q = lex_.next();
  AstNode node = make_node(NodeKind::TernaryOp, loc_of(q));
  node.children.push_back(std::move(cond));
  node.children.push_back(parse_expression());
  expect(":");
  node.children.push_back(parse_ternary());
  return seal(std::move(node));
}

int binary_precedence(const Token& t) {
  if (t.kind != TokKind::Punct) return -1;
  const std::string& s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "|") return 3;
  if (s == "^") return 4;
  if (s == "&") return 5;
  if (s == "==" || s == "!=") return 6;
  if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
  if (s == "<<" || s == ">>") return 8;
  if (s == "+" || s == "-") return 9;
  if (s == "*" || s == "/" || s == "%") return 10;
  return -1;
}

AstNode Parser::parse_binary(int min_prec) {
  AstNode lhs = parse_unary();
  for (;;) {
    int prec = binary_precedence(lex_.peek());
    if (prec < 0 || prec < min_prec) return lhs;
    Token op = lex_.next();
    AstNode rhs = parse_binary(prec + 1);
    AstNode node = make_node(NodeKind::BinaryOp, loc_of(op), op.text);
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    lhs = seal(std::move(node));
  }
}

bool Parser::at_cast() const {
  if (!lex_.peek().is("(")) return false;
  const Token& t1 = lex_.peek(1);
  if (t1.kind != TokKind::Ident) return false;
  if (!(is_base_type_keyword(t1.text) || is_builtin_typedef(t1.text) ||
        typedef_names_.count(t1.text) || is_decl_qualifier(t1.text)))
    return false;
  std::size_t i = 2;
  while (lex_.peek(i).kind == TokKind::Ident &&
         (is_base_type_keyword(lex_.peek(i).text) || is_decl_qualifier(lex_.peek(i).text) ||
          is_builtin_typedef(lex_.peek(i).text) || typedef_names_.count(lex_.peek(i).text)))
    ++i;
  while (lex_.peek(i).is("*")) ++i;
  return lex_.peek(i).is(")");
}

AstNode Parser::parse_unary() {
  const Token& t = lex_.peek();
  if (t.is("sizeof")) unsupported("sizeof");
  if (t.is("++") || t.is("--") || t.is("!") || t.is("~") || t.is("+") || t.is("-")) {
    Token op = lex_.next();
    AstNode node = make_node(NodeKind::UnaryOp, loc_of(op), op.text);
    node.children.push_back(parse_unary());
    return seal(std::move(node));
  }
  if (t.is("*")) {
    Token op = lex_.next();
    AstNode node = make_node(NodeKind::Deref, loc_of(op), "*");
    node.children.push_back(parse_unary());
    return seal(std::move(node));
  }
  if (t.is("&")) {
    Token op = lex_.next();
    AstNode node = make_node(NodeKind::AddressOf, loc_of(op), "&");
    node.children.push_back(parse_unary());
    return seal(std::move(node));
  }
  if (at_cast()) {
    Token open = lex_.next();
    std::string type_text;
    while (!lex_.peek().is(")")) {
      if (!type_text.empty()) type_text += ' ';
      type_text += lex_.next().text;
    }
    expect(")");
    AstNode node = make_node(NodeKind::Cast, loc_of(open), type_text);
    node.children.push_back(parse_unary());
    return seal(std::move(node));
  }
  return parse_postfix();
}

AstNode Parser::parse_postfix() {
  AstNode expr = parse_primary();
  for (;;) {
    const Token& t = lex_.peek();
    if (t.is("[")) {
      Token open = lex_.next();
      AstNode node = make_node(NodeKind::ArrayRef, loc_of(open));
      node.children.push_back(std::move(expr));
      node.children.push_back(parse_expression());
      Token close = expect("]");
      node.loc = span(node.children[0].loc, loc_of(close));
      expr = std::move(node);
    } else if (t.is("(")) {
      Token open = lex_.next();
      AstNode node = make_node(NodeKind::Call, loc_of(open));
      node.children.push_back(std::move(expr));
      while (!lex_.peek().is(")")) {
        node.children.push_back(parse_assignment());
        if (lex_.peek().is(",")) lex_.next();
      }
      Token close = expect(")");
      node.loc = span(node.children[0].loc, loc_of(close));
      expr = std::move(node);
    } else if (t.is("->") || t.is(".")) {
      Token op = lex_.next();
      if (lex_.peek().kind != TokKind::Ident) fail("member name");
      Token member = lex_.next();
      AstNode node = make_node(NodeKind::StructRef, loc_of(op));
      SourceLocation begin = expr.loc;
      node.children.push_back(std::move(expr));
      node.children.push_back(make_node(NodeKind::ID, loc_of(member), member.text));
      node.loc = span(begin, loc_of(member));
      expr = std::move(node);
    } else if (t.is("++") || t.is("--")) {
      Token op = lex_.next();
      AstNode node = make_node(NodeKind::UnaryOp, loc_of(op), op.text);
      SourceLocation begin = expr.loc;
      node.children.push_back(std::move(expr));
      node.loc = span(begin, loc_of(op));
      expr = std::move(node);
    } else {
      return expr;
    }
  }
}

AstNode Parser::parse_primary() {
  const Token& t = lex_.peek();
  if (t.kind == TokKind::Ident) {
    if (keywords().count(t.text)) unsupported(t.text);
    Token id = lex_.next();
    return make_node(NodeKind::ID, loc_of(id), id.text);
  }
  if (t.kind == TokKind::Number || t.kind == TokKind::String || t.kind == TokKind::Char) {
    Token lit = lex_.next();
    return make_node(NodeKind::Constant, loc_of(lit), lit.text);
  }
  if (t.is("(")) {
    lex_.next();
    AstNode inner = parse_expression();
    expect(")");
    return inner;
  }
  fail("expression");
}

}  // namespace

TranslationUnit parse_unit(std::string_view text, std::string filename) {
  Parser p(text, std::move(filename));
  return p.parse(nullptr);
}

TranslationUnit parse_unit(std::string_view text, std::string filename,
                           std::vector<ParseDiagnostic>& diags) {
  Parser p(text, std::move(filename));
  return p.parse(&diags);
}

std::vector<FunctionDef> parse_source(std::string_view text, std::string filename) {
  return parse_unit(text, std::move(filename)).functions;
}

}  // namespace twinfinder
