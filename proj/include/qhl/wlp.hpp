#ifndef QHL_WLP_HPP
#define QHL_WLP_HPP

#include <chrono>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qhl/context.hpp"
#include "qhl/lang/validate.hpp"
#include "qhl/psd.hpp"
#include "qhl/semantics.hpp"

namespace qhl {

enum class VcRule { OrdWlp, LoopInvariant, InvariantLowerBound, InvariantUpperBound };

inline const char* rule_name(VcRule r) {
  switch (r) {
    case VcRule::OrdWlp:
      return "ord_wlp";
    case VcRule::LoopInvariant:
      return "loop";
    case VcRule::InvariantLowerBound:
      return "invariant-lower-bound";
    case VcRule::InvariantUpperBound:
      return "invariant-upper-bound";
  }
  return "?";
}

/// Claim lhs below rhs in the Loewner order.
template <Scalar S>
struct VerificationCondition {
  Matrix<S> lhs;
  Matrix<S> rhs;
  VcRule rule = VcRule::OrdWlp;
  std::string origin;
  lang::SourcePos pos;
};

/// P_0 .. P_n of the loop recurrence and whether the last step was stationary.
template <Scalar S>
struct FixpointTrace {
  std::vector<Matrix<S>> iterates;
  bool stabilized = false;

  const Matrix<S>& last() const { return iterates.back(); }
};

inline constexpr double kFixpointTol = 1e-10;

namespace detail {

inline std::string at_line(lang::SourcePos pos) {
  return "line " + std::to_string(pos.line) + ":" + std::to_string(pos.col);
}

template <Scalar S>
bool same_iterate(const Matrix<S>& a, const Matrix<S>& b) {
  if constexpr (is_exact_v<S>)
    return a == b;
  else
    return max_abs_diff(a, b) < kFixpointTol;
}

template <Scalar S>
class WlpEngine {
 public:
  WlpEngine(const lang::ValidatedModel<S>& model, std::vector<VerificationCondition<S>>* sink)
      : model_(model), sink_(sink) {}

  Matrix<S> wlp(const lang::Stmt& s, const Matrix<S>& post) {
    const VarContext& ctx = model_.ctx;
    if (post.dim() != ctx.total_dim()) throw DimensionMismatch("wlp postcondition");
    return std::visit(
        [&](const auto& n) -> Matrix<S> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, lang::Skip>) {
            return post;
          } else if constexpr (std::is_same_v<T, lang::Init>) {
            // sum_n |n><0| post |0><n| on the variable
            Matrix<S> out(ctx.total_dim());
            for (const auto& e : init_kraus<S>(ctx.index_of(n.var), ctx)) out += kraus_dual(e, post);
            return out;
          } else if constexpr (std::is_same_v<T, lang::Unitary>) {
            return kraus_dual(lift(model_.symbol(n.op), n.vars, ctx), post);
          } else if constexpr (std::is_same_v<T, lang::Seq>) {
            Matrix<S> cur = post;
            for (auto it = n.stmts.rbegin(); it != n.stmts.rend(); ++it) cur = wlp(*it, cur);
            return cur;
          } else if constexpr (std::is_same_v<T, lang::Measure>) {
            Matrix<S> out(ctx.total_dim());
            for (std::size_t k = 0; k < n.branches.size(); ++k)
              out += kraus_dual(lift(model_.symbol(lang::branch_symbol(n.family, k)), n.vars, ctx),
                                wlp(n.branches[k], post));
            return out;
          } else if constexpr (std::is_same_v<T, lang::While>) {
            return annotated_loop(n, s.pos, post);
          } else {
            return bounded(n, post).last();
          }
        },
        s.node);
  }

  Matrix<S> loop_pre(const Matrix<S>& m0, const Matrix<S>& m1, const Matrix<S>& inv, const Matrix<S>& post) const {
    return kraus_dual(m0, post) + kraus_dual(m1, inv);
  }

  FixpointTrace<S> bounded(const lang::WhileN& n, const Matrix<S>& post) {
    const VarContext& ctx = model_.ctx;
    const Matrix<S> m0 = lift(model_.symbol(n.m0), n.vars, ctx);
    const Matrix<S> m1 = lift(model_.symbol(n.m1), n.vars, ctx);
    return fixpoint(m0, m1, *n.body, post, n.bound);
  }

  FixpointTrace<S> fixpoint(const Matrix<S>& m0, const Matrix<S>& m1, const lang::Stmt& body, const Matrix<S>& post,
                            std::size_t bound) {
    FixpointTrace<S> tr;
    tr.iterates.push_back(Matrix<S>::identity(model_.ctx.total_dim()));
    const Matrix<S> exit_part = kraus_dual(m0, post);
    for (std::size_t j = 0; j < bound; ++j) {
      tr.iterates.push_back(exit_part + kraus_dual(m1, wlp(body, tr.iterates.back())));
    }
    const std::size_t k = tr.iterates.size();
    tr.stabilized = k >= 2 && same_iterate(tr.iterates[k - 1], tr.iterates[k - 2]);
    return tr;
  }

 private:
  // Rule (Loop) through ord_wlp: the precondition is M0^dag P M0 + M1^dag Inv M1,
  // provided Inv below wlp(body, that precondition).
  Matrix<S> annotated_loop(const lang::While& n, lang::SourcePos pos, const Matrix<S>& post) {
    const VarContext& ctx = model_.ctx;
    const Matrix<S> m0 = lift(model_.symbol(n.m0), n.vars, ctx);
    const Matrix<S> m1 = lift(model_.symbol(n.m1), n.vars, ctx);
    const Matrix<S>& inv = model_.symbol(n.invariant);
    const Matrix<S> pre = loop_pre(m0, m1, inv, post);
    if (sink_) {
      const std::size_t d = ctx.total_dim();
      sink_->push_back({Matrix<S>::zero(d), inv, VcRule::InvariantLowerBound,
                        "0 <= " + n.invariant + " (invariant bound at " + at_line(pos) + ")", pos});
      sink_->push_back({inv, Matrix<S>::identity(d), VcRule::InvariantUpperBound,
                        n.invariant + " <= I (invariant bound at " + at_line(pos) + ")", pos});
      const std::size_t slot = sink_->size();
      sink_->push_back({inv, Matrix<S>(d), VcRule::LoopInvariant,
                        "loop invariant " + n.invariant + " at " + at_line(pos), pos});
      // Computing the body's wlp may emit VCs for nested loops after this slot.
      Matrix<S> body_pre = wlp(*n.body, pre);
      (*sink_)[slot].rhs = std::move(body_pre);
    }
    return pre;
  }

  const lang::ValidatedModel<S>& model_;
  std::vector<VerificationCondition<S>>* sink_;
};

}  // namespace detail

/// Weakest liberal precondition; annotated loops contribute their rule
/// (Loop) precondition. Side conditions are not collected here; use
/// generate_vcs for a complete proof obligation set.
template <Scalar S>
Matrix<S> wlp(const lang::Stmt& s, const Matrix<S>& post, const lang::ValidatedModel<S>& model) {
  return detail::WlpEngine<S>(model, nullptr).wlp(s, post);
}

/// m0^dag post m0 + m1^dag inv m1, all at the global dimension.
template <Scalar S>
Matrix<S> loop_pre(const Matrix<S>& m0, const Matrix<S>& m1, const Matrix<S>& inv, const Matrix<S>& post) {
  return dagger(m0) * post * m0 + dagger(m1) * inv * m1;
}

/// P_0 = I, P_{j+1} = m0^dag post m0 + m1^dag wlp(body, P_j) m1 for j < n.
/// m0 and m1 are global (already lifted) operators.
template <Scalar S>
FixpointTrace<S> fixpoint_wlp_bounded(const Matrix<S>& m0, const Matrix<S>& m1, const lang::Stmt& body,
                                      const Matrix<S>& post, std::size_t n, const lang::ValidatedModel<S>& model) {
  return detail::WlpEngine<S>(model, nullptr).fixpoint(m0, m1, body, post, n);
}

template <Scalar S>
struct ProofObligations {
  Matrix<S> precondition;  // P' for the whole body
  std::vector<VerificationCondition<S>> vcs;
};

/// Reduces {pre} body {post} to Loewner inequalities: pre below P' (ord_wlp),
/// and for each annotated loop its invariant bounds and the rule (Loop)
/// premise Inv below wlp(body, M0^dag P M0 + M1^dag Inv M1).
template <Scalar S>
ProofObligations<S> generate_vcs(const lang::ValidatedModel<S>& model) {
  ProofObligations<S> out;
  std::vector<VerificationCondition<S>> side;
  out.precondition = detail::WlpEngine<S>(model, &side).wlp(model.program.body, model.post());
  out.vcs.push_back({model.pre(), out.precondition, VcRule::OrdWlp,
                     model.program.pre + " <= wlp(body, " + model.program.post + ") (ord_wlp at top level)",
                     model.program.body.pos});
  for (auto& vc : side) out.vcs.push_back(std::move(vc));
  return out;
}

enum class Verdict { Verified, Refuted, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return "verified";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

enum class Discharge { True, False, Unknown };

inline const char* discharge_name(Discharge d) {
  switch (d) {
    case Discharge::True:
      return "true";
    case Discharge::False:
      return "false";
    case Discharge::Unknown:
      return "unknown";
  }
  return "?";
}

struct DischargeResult {
  Discharge result = Discharge::Unknown;
  /// Float backend only: smallest eigenvalue of rhs - lhs.
  std::optional<double> min_eigenvalue;
};

/// Decides one VC. The exact backend is total. The float backend accepts
/// lambda_min >= -t, refutes lambda_min <= -10 t and answers unknown in
/// between, with t = tol * max(1, ||rhs - lhs||_inf).
template <Scalar S>
DischargeResult discharge(const VerificationCondition<S>& vc, double tol = kDefaultPsdTol) {
  DischargeResult r;
  if constexpr (is_exact_v<S>) {
    (void)tol;
    r.result = loewner_leq(vc.lhs, vc.rhs) ? Discharge::True : Discharge::False;
  } else {
    if (!is_hermitian(vc.lhs) || !is_hermitian(vc.rhs)) throw NonHermitian(vc.origin);
    const Matrix<S> diff = vc.rhs - vc.lhs;
    const double lam = min_eigenvalue(diff);
    const double t = scaled_tolerance(diff, tol);
    r.min_eigenvalue = lam;
    if (lam >= -t)
      r.result = Discharge::True;
    else if (lam <= -10.0 * t)
      r.result = Discharge::False;
    else
      r.result = Discharge::Unknown;
  }
  return r;
}

/// Discharges VCs on up to `jobs` threads; results keep VC order.
template <Scalar S>
std::vector<DischargeResult> discharge_all(const std::vector<VerificationCondition<S>>& vcs, double tol,
                                           std::size_t jobs) {
  std::vector<DischargeResult> out(vcs.size());
  if (jobs <= 1 || vcs.size() <= 1) {
    for (std::size_t k = 0; k < vcs.size(); ++k) out[k] = discharge(vcs[k], tol);
    return out;
  }
  const std::size_t workers = std::min(jobs, vcs.size());
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < vcs.size(); k += workers) out[k] = discharge(vcs[k], tol);
    }));
  }
  for (auto& t : tasks) t.get();
  return out;
}

inline Verdict combine(const std::vector<DischargeResult>& results) {
  bool unknown = false;
  for (const auto& r : results) {
    if (r.result == Discharge::False) return Verdict::Refuted;
    if (r.result == Discharge::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Verified;
}

}  // namespace qhl

#endif  // QHL_WLP_HPP
