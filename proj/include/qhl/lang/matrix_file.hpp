#ifndef QHL_LANG_MATRIX_FILE_HPP
#define QHL_LANG_MATRIX_FILE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhl/lang/lexer.hpp"
#include "qhl/matrix.hpp"

namespace qhl::lang {

/// A named matrix as read from a matrix file: exact when every entry is an
/// exact expression, float as soon as one entry contains a float literal.
struct Symbol {
  std::variant<Matrix<Cyclotomic>, Matrix<ComplexFloat>> value;
  SourcePos pos;

  Backend backend() const { return value.index() == 0 ? Backend::Exact : Backend::Float; }
  std::size_t dim() const {
    return std::visit([](const auto& m) { return m.dim(); }, value);
  }
  const Matrix<Cyclotomic>* exact() const { return std::get_if<0>(&value); }

  Matrix<ComplexFloat> as_float() const {
    if (const auto* e = exact()) return to_float(*e);
    return std::get<1>(value);
  }
};

class SymbolTable {
 public:
  void insert(const std::string& name, Symbol s) { symbols_.insert_or_assign(name, std::move(s)); }

  bool contains(const std::string& name) const { return symbols_.count(name) != 0; }

  const Symbol* find(const std::string& name) const {
    const auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, Symbol>& entries() const { return symbols_; }

  bool all_exact() const {
    for (const auto& [_, s] : symbols_)
      if (s.backend() != Backend::Exact) return false;
    return true;
  }

 private:
  std::map<std::string, Symbol> symbols_;
};

namespace detail {

/// Entry value during evaluation: exact until a float literal is seen.
class EntryValue {
 public:
  EntryValue(Cyclotomic c) : v_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  EntryValue(ComplexFloat f) : v_(f) {}           // NOLINT(google-explicit-constructor)

  bool is_exact() const { return v_.index() == 0; }
  const Cyclotomic& exact() const { return std::get<0>(v_); }
  ComplexFloat as_float() const { return is_exact() ? exact().to_float() : std::get<1>(v_); }

  template <class ExactOp, class FloatOp>
  static EntryValue combine(const EntryValue& a, const EntryValue& b, ExactOp eop, FloatOp fop) {
    if (a.is_exact() && b.is_exact()) return eop(a.exact(), b.exact());
    return fop(a.as_float(), b.as_float());
  }

 private:
  std::variant<Cyclotomic, ComplexFloat> v_;
};

class MatrixFileParser {
 public:
  explicit MatrixFileParser(std::string_view src) : ts_(tokenize(src)) {}

  SymbolTable parse() {
    SymbolTable table;
    while (!ts_.at_end()) {
      const Token& name_tok = ts_.expect_kind(TokenKind::Ident, "matrix name");
      const std::string name = name_tok.text;
      const SourcePos at = name_tok.pos;
      if (table.contains(name)) throw ParseError("duplicate matrix '" + name + "'", at.line, at.col);
      ts_.expect("=");
      table.insert(name, matrix(name, at));
    }
    return table;
  }

 private:
  Symbol matrix(const std::string& name, SourcePos at) {
    ts_.expect("[");
    std::vector<std::vector<EntryValue>> rows;
    do {
      const SourcePos row_at = ts_.peek().pos;
      ts_.expect("[");
      std::vector<EntryValue> row;
      row.push_back(expr());
      while (ts_.accept(",")) row.push_back(expr());
      ts_.expect("]");
      if (!rows.empty() && row.size() != rows.front().size())
        throw ParseError("ragged rows in matrix '" + name + "'", row_at.line, row_at.col);
      rows.push_back(std::move(row));
    } while (ts_.accept(","));
    ts_.expect("]");
    if (rows.size() != rows.front().size())
      throw ParseError("matrix '" + name + "' is not square (" + std::to_string(rows.size()) + "x" +
                           std::to_string(rows.front().size()) + ")",
                       at.line, at.col);
    bool exact = true;
    for (const auto& r : rows)
      for (const auto& e : r) exact = exact && e.is_exact();
    const std::size_t n = rows.size();
    if (exact) {
      Matrix<Cyclotomic> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].exact();
      return Symbol{std::move(m), at};
    }
    Matrix<ComplexFloat> m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].as_float();
    return Symbol{std::move(m), at};
  }

  // expr := term (('+'|'-') term)*
  EntryValue expr() {
    EntryValue v = term();
    for (;;) {
      if (ts_.accept("+")) {
        v = EntryValue::combine(
            v, term(), [](const auto& a, const auto& b) { return a + b; },
            [](const auto& a, const auto& b) { return a + b; });
      } else if (ts_.accept("-")) {
        v = EntryValue::combine(
            v, term(), [](const auto& a, const auto& b) { return a - b; },
            [](const auto& a, const auto& b) { return a - b; });
      } else {
        return v;
      }
    }
  }

  // term := unary (('*'|'/') unary)*
  EntryValue term() {
    EntryValue v = unary();
    for (;;) {
      if (ts_.accept("*")) {
        v = EntryValue::combine(
            v, unary(), [](const auto& a, const auto& b) { return a * b; },
            [](const auto& a, const auto& b) { return a * b; });
      } else if (ts_.peek().is("/")) {
        const SourcePos at = ts_.next().pos;
        const EntryValue d = unary();
        if (d.is_exact() ? d.exact().is_zero() : d.as_float().is_zero())
          throw ParseError("division by zero", at.line, at.col);
        v = EntryValue::combine(
            v, d, [](const auto& a, const auto& b) { return a / b; },
            [](const auto& a, const auto& b) { return a / b; });
      } else {
        return v;
      }
    }
  }

  EntryValue unary() {
    if (ts_.accept("-")) {
      const EntryValue v = unary();
      if (v.is_exact()) return -v.exact();
      return -v.as_float();
    }
    if (ts_.accept("+")) return unary();
    return primary();
  }

  EntryValue primary() {
    const Token& t = ts_.peek();
    if (t.kind == TokenKind::Nat) {
      ts_.next();
      return Cyclotomic(Rational(mpz_class(t.text)));
    }
    if (t.kind == TokenKind::Float) {
      ts_.next();
      return ComplexFloat(std::stod(t.text));
    }
    if (t.kind == TokenKind::Ident) {
      if (t.text == "i") {
        ts_.next();
        return Cyclotomic::imag_unit();
      }
      if (t.text == "sqrt2") {
        ts_.next();
        return Cyclotomic::sqrt2();
      }
      if (t.text == "omega") {
        ts_.next();
        return Cyclotomic::zeta();
      }
      ts_.fail("unknown constant (expected i, sqrt2 or omega)");
    }
    if (ts_.accept("(")) {
      EntryValue v = expr();
      ts_.expect(")");
      return v;
    }
    ts_.fail("expected matrix entry");
  }

  TokenStream ts_;
};

}  // namespace detail

/// Parses `NAME = [[e, ...], ...]` definitions. Entries are expressions over
/// integers, i, sqrt2, omega = exp(i pi/4), + - * / and parentheses; a float
/// literal anywhere in a matrix makes that matrix float.
inline SymbolTable parse_matrix_file(std::string_view text) { return detail::MatrixFileParser(text).parse(); }

}  // namespace qhl::lang

#endif  // QHL_LANG_MATRIX_FILE_HPP
