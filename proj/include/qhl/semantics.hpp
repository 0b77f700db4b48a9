#ifndef QHL_SEMANTICS_HPP
#define QHL_SEMANTICS_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qhl/context.hpp"
#include "qhl/lang/validate.hpp"
#include "qhl/psd.hpp"

namespace qhl {

struct SemanticsOptions {
  std::size_t k_max = 1000;
  double trace_eps = 1e-12;  // float backend only; exact loops stop at an exactly zero residual
};

/// Raised by dual_apply on an invariant-annotated loop.
class NotLoopFree : public Error {
 public:
  NotLoopFree() : Error("dual semantics needs a loop-free statement (while_n is allowed)") {}
};

template <Scalar S>
struct Simulation {
  Matrix<S> state;
  /// False when some loop hit k_max with residual mass left: state is then a
  /// lower bound of the true output.
  bool complete = true;
  /// Accumulated trace of every branch of every measurement, keyed by the
  /// statement's source position.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<S>> branch_traces;
};

namespace detail {

template <Scalar S>
Matrix<S> kraus(const Matrix<S>& e, const Matrix<S>& rho) {
  return e * rho * dagger(e);
}

template <Scalar S>
Matrix<S> kraus_dual(const Matrix<S>& e, const Matrix<S>& a) {
  return dagger(e) * a * e;
}

/// Kraus operators |0><n| of q := |0>, lifted.
template <Scalar S>
std::vector<Matrix<S>> init_kraus(std::size_t var, const VarContext& ctx) {
  std::vector<Matrix<S>> out;
  const std::size_t d = ctx.dim(var);
  for (std::size_t n = 0; n < d; ++n) out.push_back(lift(Matrix<S>::unit(d, 0, n), std::vector<std::size_t>{var}, ctx));
  return out;
}

template <Scalar S>
bool residual_vanished(const Matrix<S>& sigma, const SemanticsOptions& opt) {
  if constexpr (is_exact_v<S>) {
    (void)opt;
    return trace(sigma).is_zero();
  } else {
    return trace(sigma).re < opt.trace_eps;
  }
}

template <Scalar S>
class Denotation {
 public:
  Denotation(const lang::ValidatedModel<S>& model, const SemanticsOptions& opt, Simulation<S>* record)
      : model_(model), opt_(opt), record_(record) {}

  Matrix<S> apply(const lang::Stmt& s, const Matrix<S>& rho) {
    const VarContext& ctx = model_.ctx;
    return std::visit(
        [&](const auto& n) -> Matrix<S> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, lang::Skip>) {
            return rho;
          } else if constexpr (std::is_same_v<T, lang::Init>) {
            Matrix<S> out(ctx.total_dim());
            for (const auto& e : init_kraus<S>(ctx.index_of(n.var), ctx)) out += kraus(e, rho);
            return out;
          } else if constexpr (std::is_same_v<T, lang::Unitary>) {
            return kraus(lift(model_.symbol(n.op), n.vars, ctx), rho);
          } else if constexpr (std::is_same_v<T, lang::Seq>) {
            Matrix<S> cur = rho;
            for (const auto& c : n.stmts) cur = apply(c, cur);
            return cur;
          } else if constexpr (std::is_same_v<T, lang::Measure>) {
            Matrix<S> out(ctx.total_dim());
            std::vector<S> traces;
            for (std::size_t k = 0; k < n.branches.size(); ++k) {
              const Matrix<S> branch = kraus(lift(model_.symbol(lang::branch_symbol(n.family, k)), n.vars, ctx), rho);
              traces.push_back(trace(branch));
              out += apply(n.branches[k], branch);
            }
            note_branches(s.pos, traces);
            return out;
          } else if constexpr (std::is_same_v<T, lang::While>) {
            return loop(n.m0, n.m1, n.vars, *n.body, rho, opt_.k_max, true);
          } else {
            return loop(n.m0, n.m1, n.vars, *n.body, rho, n.bound, false);
          }
        },
        s.node);
  }

 private:
  // sum_{k < bound} E0((body . E1)^k (rho)); an unbounded loop stops early
  // once the residual vanishes and reports incompleteness at k_max.
  Matrix<S> loop(const std::string& m0, const std::string& m1, const std::vector<std::string>& vars,
                 const lang::Stmt& body, const Matrix<S>& rho, std::size_t bound, bool unbounded) {
    const Matrix<S> e0 = lift(model_.symbol(m0), vars, model_.ctx);
    const Matrix<S> e1 = lift(model_.symbol(m1), vars, model_.ctx);
    Matrix<S> acc(model_.ctx.total_dim());
    Matrix<S> sigma = rho;
    for (std::size_t k = 0; k < bound; ++k) {
      if (unbounded && residual_vanished(sigma, opt_)) return acc;
      acc += kraus(e0, sigma);
      sigma = apply(body, kraus(e1, sigma));
    }
    if (unbounded && !residual_vanished(sigma, opt_) && record_) record_->complete = false;
    return acc;
  }

  void note_branches(lang::SourcePos pos, const std::vector<S>& traces) {
    if (!record_) return;
    auto& slot = record_->branch_traces[{pos.line, pos.col}];
    // statements built without source positions share one slot
    if (slot.size() < traces.size()) slot.resize(traces.size(), S(0));
    for (std::size_t k = 0; k < traces.size(); ++k) slot[k] += traces[k];
  }

  const lang::ValidatedModel<S>& model_;
  const SemanticsOptions& opt_;
  Simulation<S>* record_;
};

template <Scalar S>
class DualDenotation {
 public:
  explicit DualDenotation(const lang::ValidatedModel<S>& model) : model_(model) {}

  Matrix<S> apply(const lang::Stmt& s, const Matrix<S>& a) const {
    const VarContext& ctx = model_.ctx;
    return std::visit(
        [&](const auto& n) -> Matrix<S> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, lang::Skip>) {
            return a;
          } else if constexpr (std::is_same_v<T, lang::Init>) {
            Matrix<S> out(ctx.total_dim());
            for (const auto& e : init_kraus<S>(ctx.index_of(n.var), ctx)) out += kraus_dual(e, a);
            return out;
          } else if constexpr (std::is_same_v<T, lang::Unitary>) {
            return kraus_dual(lift(model_.symbol(n.op), n.vars, ctx), a);
          } else if constexpr (std::is_same_v<T, lang::Seq>) {
            Matrix<S> cur = a;
            for (auto it = n.stmts.rbegin(); it != n.stmts.rend(); ++it) cur = apply(*it, cur);
            return cur;
          } else if constexpr (std::is_same_v<T, lang::Measure>) {
            Matrix<S> out(ctx.total_dim());
            for (std::size_t k = 0; k < n.branches.size(); ++k)
              out += kraus_dual(lift(model_.symbol(lang::branch_symbol(n.family, k)), n.vars, ctx),
                                apply(n.branches[k], a));
            return out;
          } else if constexpr (std::is_same_v<T, lang::WhileN>) {
            // D_0 = 0, D_{j+1} = E0*(a) + E1*(body*(D_j))
            const Matrix<S> e0 = lift(model_.symbol(n.m0), n.vars, ctx);
            const Matrix<S> e1 = lift(model_.symbol(n.m1), n.vars, ctx);
            const Matrix<S> exit_part = kraus_dual(e0, a);
            Matrix<S> cur(ctx.total_dim());
            for (std::size_t j = 0; j < n.bound; ++j) cur = exit_part + kraus_dual(e1, apply(*n.body, cur));
            return cur;
          } else {
            throw NotLoopFree();
          }
        },
        s.node);
  }

 private:
  const lang::ValidatedModel<S>& model_;
};

}  // namespace detail

/// Denotational semantics [[s]](rho) as a superoperator over the model's
/// global space. Unbounded loops are summed until the residual vanishes or
/// k_max iterations; the returned Simulation flags truncation.
template <Scalar S>
Simulation<S> simulate(const lang::Stmt& s, const Matrix<S>& rho, const lang::ValidatedModel<S>& model,
                       const SemanticsOptions& opt = {}) {
  if (rho.dim() != model.ctx.total_dim()) throw DimensionMismatch("input state");
  Simulation<S> sim;
  sim.state = detail::Denotation<S>(model, opt, &sim).apply(s, rho);
  return sim;
}

template <Scalar S>
Matrix<S> deno_apply(const lang::Stmt& s, const Matrix<S>& rho, const lang::ValidatedModel<S>& model,
                     const SemanticsOptions& opt = {}) {
  return simulate(s, rho, model, opt).state;
}

/// Schroedinger-Heisenberg dual [[s]]*(a) of a loop-free statement.
template <Scalar S>
Matrix<S> dual_apply(const lang::Stmt& s, const Matrix<S>& a, const lang::ValidatedModel<S>& model) {
  if (a.dim() != model.ctx.total_dim()) throw DimensionMismatch("observable");
  return detail::DualDenotation<S>(model).apply(s, a);
}

inline constexpr double kTripleSlack = 1e-9;

/// Partial-correctness inequality at one input state:
///   tr(P rho) <= tr(Q [[s]](rho)) + tr(rho) - tr([[s]](rho)).
template <Scalar S>
bool triple_holds_on(const Matrix<S>& pre, const lang::Stmt& s, const Matrix<S>& post, const Matrix<S>& rho,
                     const lang::ValidatedModel<S>& model, const SemanticsOptions& opt = {}) {
  const Matrix<S> out = deno_apply(s, rho, model, opt);
  const S slack = trace(post * out) + trace(rho) - trace(out) - trace(pre * rho);
  if constexpr (is_exact_v<S>) {
    return slack.real_sign() >= 0;
  } else {
    return slack.re >= -kTripleSlack;
  }
}

}  // namespace qhl

#endif  // QHL_SEMANTICS_HPP
