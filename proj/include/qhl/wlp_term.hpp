#ifndef QHL_WLP_TERM_HPP
#define QHL_WLP_TERM_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "qhl/context.hpp"
#include "qhl/lang/ast.hpp"

namespace qhl {

/// S-expression for a symbolic wlp trace.
struct Term {
  std::vector<std::string> atoms;  // head and leading scalar arguments
  std::vector<Term> children;

  static Term leaf(std::string a) { return Term{{std::move(a)}, {}}; }
  bool is_leaf() const { return children.empty() && atoms.size() == 1; }

  std::string inline_form() const {
    if (is_leaf()) return atoms.front();
    std::string s = "(";
    for (std::size_t k = 0; k < atoms.size(); ++k) s += (k ? " " : "") + atoms[k];
    for (const auto& c : children) s += " " + c.inline_form();
    return s + ")";
  }

  std::string render(std::size_t indent = 0, std::size_t width = 80) const {
    const std::string flat = inline_form();
    if (is_leaf() || indent + flat.size() <= width) return flat;
    std::string s = "(";
    for (std::size_t k = 0; k < atoms.size(); ++k) s += (k ? " " : "") + atoms[k];
    // leaf children stay on the head line, the rest go underneath
    std::size_t k = 0;
    while (k < children.size() && children[k].is_leaf()) s += " " + children[k++].inline_form();
    for (; k < children.size(); ++k) s += "\n" + std::string(indent + 2, ' ') + children[k].render(indent + 2, width);
    return s + ")";
  }
};

namespace detail {

inline Term matsum(const std::string& var, std::size_t idx, Term t) {
  return Term{{"matsum", var, std::to_string(idx)}, {std::move(t)}};
}

inline std::string index_list(const std::vector<std::string>& vars, const VarContext& ctx) {
  if (vars.size() == 1) return std::to_string(ctx.index_of(vars.front()));
  std::string s = "[";
  for (std::size_t k = 0; k < vars.size(); ++k) s += (k ? "," : "") + std::to_string(ctx.index_of(vars[k]));
  return s + "]";
}

inline std::string body_label(const lang::Stmt& body) { return "body@" + std::to_string(body.pos.line); }

inline Term wlp_term(const lang::Stmt& s, Term post, const VarContext& ctx) {
  return std::visit(
      [&](const auto& n) -> Term {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::Skip>) {
          return post;
        } else if constexpr (std::is_same_v<T, lang::Init>) {
          return matsum(n.var, ctx.index_of(n.var), std::move(post));
        } else if constexpr (std::is_same_v<T, lang::Unitary>) {
          return Term{{"matUtrans", n.op, index_list(n.vars, ctx)}, {std::move(post)}};
        } else if constexpr (std::is_same_v<T, lang::Seq>) {
          Term cur = std::move(post);
          for (auto it = n.stmts.rbegin(); it != n.stmts.rend(); ++it) cur = wlp_term(*it, std::move(cur), ctx);
          return cur;
        } else if constexpr (std::is_same_v<T, lang::Measure>) {
          Term acc = Term::leaf("zero");
          for (std::size_t k = n.branches.size(); k-- > 0;) {
            const std::string m = lang::branch_symbol(n.family, k);
            Term inner = wlp_term(n.branches[k], post, ctx);
            Term dag{{"mat_mult"}, {Term{{"dag", m}, {}}, std::move(inner)}};
            Term mult{{"mat_mult"}, {std::move(dag), Term::leaf(m)}};
            acc = Term{{"mat_add"}, {std::move(mult), std::move(acc)}};
          }
          return acc;
        } else if constexpr (std::is_same_v<T, lang::While>) {
          return Term{{"fixpoint_wlp", n.m0, n.m1, body_label(*n.body), n.invariant}, {std::move(post)}};
        } else {
          return Term{{"fixpoint_wlp_bounded", std::to_string(n.bound), n.m0, n.m1, body_label(*n.body)},
                      {std::move(post)}};
        }
      },
      s.node);
}

}  // namespace detail

/// Symbolic trace of wlp(body, post) in matsum / matUtrans / fixpoint_wlp /
/// mat_add form, rooted at the top-level order claim `less pre P'`.
inline Term wlp_term(const lang::Program& p) {
  const VarContext ctx(p.vars);
  Term pre_term = detail::wlp_term(p.body, Term::leaf(p.post), ctx);
  return Term{{"less", p.pre}, {std::move(pre_term)}};
}

}  // namespace qhl

#endif  // QHL_WLP_TERM_HPP
