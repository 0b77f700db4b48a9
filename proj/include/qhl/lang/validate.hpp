#ifndef QHL_LANG_VALIDATE_HPP
#define QHL_LANG_VALIDATE_HPP

#include <map>
#include <string>

#include "qhl/context.hpp"
#include "qhl/lang/ast.hpp"
#include "qhl/lang/matrix_file.hpp"
#include "qhl/psd.hpp"

namespace qhl::lang {

enum class ValidationErrorKind {
  MissingSymbol,
  DimensionMismatch,
  NotUnitary,
  IncompleteMeasurement,
  IncompleteLoopMeasurement,
  NotPredicate,
  BackendMismatch,
};

inline const char* kind_name(ValidationErrorKind k) {
  switch (k) {
    case ValidationErrorKind::MissingSymbol:
      return "missing-symbol";
    case ValidationErrorKind::DimensionMismatch:
      return "dimension-mismatch";
    case ValidationErrorKind::NotUnitary:
      return "not-unitary";
    case ValidationErrorKind::IncompleteMeasurement:
      return "incomplete-measurement";
    case ValidationErrorKind::IncompleteLoopMeasurement:
      return "incomplete-loop-measurement";
    case ValidationErrorKind::NotPredicate:
      return "not-a-predicate";
    case ValidationErrorKind::BackendMismatch:
      return "backend-mismatch";
  }
  return "unknown";
}

class ValidationError : public Error {
 public:
  ValidationError(ValidationErrorKind kind, std::string symbol, const std::string& detail, SourcePos pos = {})
      : Error(std::string(kind_name(kind)) + ": " + symbol + (detail.empty() ? "" : " (" + detail + ")") +
              (pos.line ? " at line " + std::to_string(pos.line) : "")),
        kind_(kind),
        symbol_(std::move(symbol)) {}

  ValidationErrorKind kind() const noexcept { return kind_; }
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  ValidationErrorKind kind_;
  std::string symbol_;
};

/// A program whose symbols all resolved, on one scalar backend, with every
/// side condition checked. Immutable after validate().
template <Scalar S>
struct ValidatedModel {
  Program program;
  VarContext ctx;
  std::map<std::string, Matrix<S>> symbols;
  double tol = kHermitianTol;

  const Matrix<S>& symbol(const std::string& name) const {
    const auto it = symbols.find(name);
    if (it == symbols.end()) throw ValidationError(ValidationErrorKind::MissingSymbol, name, "");
    return it->second;
  }
  const Matrix<S>& pre() const { return symbol(program.pre); }
  const Matrix<S>& post() const { return symbol(program.post); }
};

namespace detail {

template <Scalar S>
class Validator {
 public:
  Validator(const Program& p, const SymbolTable& table, double tol) : table_(table) {
    model_.program = p;
    model_.ctx = VarContext(p.vars);
    model_.tol = tol;
  }

  ValidatedModel<S> run() {
    check_stmt(model_.program.body);
    const std::size_t total = model_.ctx.total_dim();
    check_predicate(model_.program.pre, total, {});
    check_predicate(model_.program.post, total, {});
    return std::move(model_);
  }

 private:
  const Matrix<S>& resolve(const std::string& name, std::size_t expected_dim, SourcePos pos) {
    if (auto it = model_.symbols.find(name); it != model_.symbols.end()) {
      check_dim(name, it->second.dim(), expected_dim, pos);
      return it->second;
    }
    const Symbol* s = table_.find(name);
    if (!s) throw ValidationError(ValidationErrorKind::MissingSymbol, name, "not defined in the matrix file", pos);
    Matrix<S> m;
    if constexpr (is_exact_v<S>) {
      if (!s->exact())
        throw ValidationError(ValidationErrorKind::BackendMismatch, name,
                              "float entries cannot be used on the exact backend", pos);
      m = *s->exact();
    } else {
      m = s->as_float();
    }
    check_dim(name, m.dim(), expected_dim, pos);
    return model_.symbols.emplace(name, std::move(m)).first->second;
  }

  static void check_dim(const std::string& name, std::size_t got, std::size_t expected, SourcePos pos) {
    if (got != expected)
      throw ValidationError(ValidationErrorKind::DimensionMismatch, name,
                            "dimension " + std::to_string(got) + ", expected " + std::to_string(expected), pos);
  }

  bool is_identity(const Matrix<S>& m) const {
    if constexpr (is_exact_v<S>)
      return m == Matrix<S>::identity(m.dim());
    else
      return max_abs_diff(m, Matrix<S>::identity(m.dim())) <= model_.tol;
  }

  void check_predicate(const std::string& name, std::size_t dim, SourcePos pos) {
    const Matrix<S>& m = resolve(name, dim, pos);
    if (!is_hermitian(m, model_.tol))
      throw ValidationError(ValidationErrorKind::NotPredicate, name, "not Hermitian", pos);
    if (!loewner_leq(Matrix<S>::zero(dim), m))
      throw ValidationError(ValidationErrorKind::NotPredicate, name, "not positive semidefinite", pos);
    if (!loewner_leq(m, Matrix<S>::identity(dim)))
      throw ValidationError(ValidationErrorKind::NotPredicate, name, "exceeds the identity", pos);
  }

  void check_loop_measurement(const std::string& m0, const std::string& m1, const std::vector<std::string>& vars,
                              SourcePos pos) {
    const std::size_t d = model_.ctx.register_dim(model_.ctx.indices_of(vars));
    const Matrix<S>& a = resolve(m0, d, pos);
    const Matrix<S>& b = resolve(m1, d, pos);
    if (!is_identity(dagger(a) * a + dagger(b) * b))
      throw ValidationError(ValidationErrorKind::IncompleteLoopMeasurement, m0 + "," + m1,
                            "M0^dagger M0 + M1^dagger M1 != I", pos);
  }

  void check_stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Unitary>) {
            const std::size_t d = model_.ctx.register_dim(model_.ctx.indices_of(n.vars));
            const Matrix<S>& u = resolve(n.op, d, s.pos);
            if (!is_identity(dagger(u) * u))
              throw ValidationError(ValidationErrorKind::NotUnitary, n.op, "U^dagger U != I", s.pos);
          } else if constexpr (std::is_same_v<T, Seq>) {
            for (const auto& c : n.stmts) check_stmt(c);
          } else if constexpr (std::is_same_v<T, Measure>) {
            const std::size_t d = model_.ctx.register_dim(model_.ctx.indices_of(n.vars));
            Matrix<S> sum(d);
            for (std::size_t k = 0; k < n.branches.size(); ++k) {
              const Matrix<S>& mk = resolve(branch_symbol(n.family, k), d, s.pos);
              sum += dagger(mk) * mk;
            }
            if (!is_identity(sum))
              throw ValidationError(ValidationErrorKind::IncompleteMeasurement, n.family,
                                    "sum of M_k^dagger M_k != I", s.pos);
            for (const auto& c : n.branches) check_stmt(c);
          } else if constexpr (std::is_same_v<T, While>) {
            check_loop_measurement(n.m0, n.m1, n.vars, s.pos);
            check_predicate(n.invariant, model_.ctx.total_dim(), s.pos);
            check_stmt(*n.body);
          } else if constexpr (std::is_same_v<T, WhileN>) {
            check_loop_measurement(n.m0, n.m1, n.vars, s.pos);
            check_stmt(*n.body);
          }
        },
        s.node);
  }

  const SymbolTable& table_;
  ValidatedModel<S> model_;
};

}  // namespace detail

/// Resolves every symbol on backend S and checks: unitarity of gates,
/// completeness of measurements and loop guards, predicate bounds of
/// pre/post/invariants at the global dimension, and symbol dimensions
/// against the registers they act on. Each failure is a ValidationError.
template <Scalar S>
ValidatedModel<S> validate(const Program& p, const SymbolTable& table, double tol = kHermitianTol) {
  return detail::Validator<S>(p, table, tol).run();
}

}  // namespace qhl::lang

#endif  // QHL_LANG_VALIDATE_HPP
