#ifndef QHL_LANG_PARSER_HPP
#define QHL_LANG_PARSER_HPP

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qhl/lang/ast.hpp"
#include "qhl/lang/lexer.hpp"

namespace qhl::lang {

namespace detail {

inline bool is_keyword(std::string_view w) {
  static constexpr std::string_view kKeywords[] = {"program", "vars",    "pre",       "post",  "body", "skip",
                                                   "measure", "while",   "while_n",   "qubit", "int",  "invariant"};
  return std::find(std::begin(kKeywords), std::end(kKeywords), w) != std::end(kKeywords);
}

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view src) : ts_(tokenize(src)) {}

  Program parse() {
    Program p;
    ts_.expect_word("program");
    p.name = ident("program name");
    ts_.expect_word("vars");
    do {
      p.vars.push_back(decl());
    } while (ts_.peek().kind == TokenKind::Ident && !ts_.peek().is_word("pre"));
    ts_.expect_word("pre");
    p.pre = ident("precondition symbol");
    ts_.expect(";");
    ts_.expect_word("post");
    p.post = ident("postcondition symbol");
    ts_.expect(";");
    ts_.expect_word("body");
    p.body = stmt();
    if (!ts_.at_end()) ts_.fail("expected end of program");
    return p;
  }

 private:
  std::string ident(std::string_view what) {
    const Token& t = ts_.peek();
    if (t.kind != TokenKind::Ident || is_keyword(t.text)) ts_.fail("expected " + std::string(what));
    return ts_.next().text;
  }

  std::size_t nat(std::string_view what) {
    const Token& t = ts_.expect_kind(TokenKind::Nat, what);
    try {
      return std::stoul(t.text);
    } catch (const std::exception&) {
      throw ParseError("number out of range", t.pos.line, t.pos.col);
    }
  }

  VarDecl decl() {
    VarDecl d;
    d.pos = ts_.peek().pos;
    d.name = ident("variable name");
    if (declared_.count(d.name)) throw ParseError("duplicate variable '" + d.name + "'", d.pos.line, d.pos.col);
    ts_.expect(":");
    if (ts_.accept_word("qubit")) {
      d.kind = VarKind::Qubit;
      d.dim = 2;
    } else if (ts_.accept_word("int")) {
      d.kind = VarKind::Int;
      ts_.expect("[");
      const SourcePos at = ts_.peek().pos;
      d.dim = nat("dimension");
      if (d.dim < 2) throw ParseError("int dimension must be at least 2", at.line, at.col);
      ts_.expect("]");
    } else {
      ts_.fail("expected 'qubit' or 'int'");
    }
    ts_.expect(";");
    declared_.insert(d.name);
    return d;
  }

  std::string var_ref() {
    const Token& t = ts_.peek();
    std::string name = ident("variable");
    if (!declared_.count(name)) throw ParseError("unknown variable '" + name + "'", t.pos.line, t.pos.col);
    return name;
  }

  std::vector<std::string> var_list() {
    std::vector<std::string> vs;
    const SourcePos at = ts_.peek().pos;
    vs.push_back(var_ref());
    while (ts_.accept(",")) vs.push_back(var_ref());
    std::set<std::string> seen(vs.begin(), vs.end());
    if (seen.size() != vs.size()) throw ParseError("repeated variable in register", at.line, at.col);
    return vs;
  }

  // stmt := base (";" base)*, with an optional trailing ';'.
  Stmt stmt() {
    const SourcePos at = ts_.peek().pos;
    std::vector<Stmt> parts;
    parts.push_back(base());
    while (ts_.accept(";")) {
      if (ts_.at_end() || ts_.peek().is("}")) break;
      parts.push_back(base());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return make_stmt(Seq{std::move(parts)}, at);
  }

  Stmt block() {
    ts_.expect("{");
    Stmt s = stmt();
    ts_.expect("}");
    return s;
  }

  Stmt base() {
    const Token& t = ts_.peek();
    const SourcePos at = t.pos;
    if (ts_.accept_word("skip")) return make_stmt(Skip{}, at);
    if (ts_.accept_word("measure")) {
      Measure m;
      m.family = ident("measurement symbol");
      ts_.expect("[");
      m.vars = var_list();
      ts_.expect("]");
      ts_.expect("{");
      std::vector<std::pair<std::size_t, Stmt>> branches;
      do {
        const SourcePos label_at = ts_.peek().pos;
        const std::size_t label = nat("branch outcome");
        for (const auto& b : branches)
          if (b.first == label)
            throw ParseError("duplicate branch outcome " + std::to_string(label), label_at.line, label_at.col);
        ts_.expect("->");
        branches.emplace_back(label, block());
      } while (ts_.peek().kind == TokenKind::Nat);
      ts_.expect("}");
      std::sort(branches.begin(), branches.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < branches.size(); ++k) {
        if (branches[k].first != k)
          throw ParseError("branch outcomes must be 0.." + std::to_string(branches.size() - 1), at.line, at.col);
        m.branches.push_back(std::move(branches[k].second));
      }
      return make_stmt(std::move(m), at);
    }
    if (ts_.accept_word("while")) {
      std::string m0 = ident("measurement symbol");
      ts_.expect(",");
      std::string m1 = ident("measurement symbol");
      ts_.expect("[");
      auto vars = var_list();
      ts_.expect("]");
      ts_.expect_word("invariant");
      std::string inv = ident("invariant symbol");
      Stmt body = block();
      return make_stmt(While{std::move(m0), std::move(m1), std::move(vars), std::move(inv), std::move(body)}, at);
    }
    if (ts_.accept_word("while_n")) {
      const std::size_t n = nat("iteration bound");
      std::string m0 = ident("measurement symbol");
      ts_.expect(",");
      std::string m1 = ident("measurement symbol");
      ts_.expect("[");
      auto vars = var_list();
      ts_.expect("]");
      Stmt body = block();
      return make_stmt(WhileN{n, std::move(m0), std::move(m1), std::move(vars), std::move(body)}, at);
    }
    // Assignment forms start with a register.
    auto lhs = var_list();
    ts_.expect(":=");
    if (ts_.accept("|0>")) {
      if (lhs.size() != 1) throw ParseError("initialisation takes a single variable", at.line, at.col);
      return make_stmt(Init{lhs.front()}, at);
    }
    std::string op = ident("operator symbol");
    ts_.expect("[");
    const SourcePos args_at = ts_.peek().pos;
    auto args = var_list();
    ts_.expect("]");
    if (args != lhs) throw ParseError("register on the left must equal the operator's register", args_at.line, args_at.col);
    return make_stmt(Unitary{std::move(op), std::move(args)}, at);
  }

  TokenStream ts_;
  std::set<std::string> declared_;
};

}  // namespace detail

/// Parses the quantum while-language. Throws ParseError (with position) on
/// syntax errors, duplicate declarations and unknown variable references.
inline Program parse_program(std::string_view text) { return detail::ProgramParser(text).parse(); }

}  // namespace qhl::lang

#endif  // QHL_LANG_PARSER_HPP
