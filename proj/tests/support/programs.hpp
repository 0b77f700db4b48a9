// Random programs over small registers, with an exact symbol table.
#ifndef QHL_TESTS_PROGRAMS_HPP
#define QHL_TESTS_PROGRAMS_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qhl/lang/ast.hpp"
#include "qhl/lang/matrix_file.hpp"
#include "support/generators.hpp"

namespace qhl::testing {

struct ProgramOptions {
  std::size_t max_vars = 3;
  std::size_t max_dim = 8;  // bound on the global dimension
  std::size_t max_stmts = 3;
  std::size_t max_depth = 3;
  bool bounded_loops = false;    // while_n
  bool annotated_loops = false;  // while ... invariant INV
};

struct RandomCase {
  lang::Program program;
  lang::SymbolTable table;
  std::size_t dim = 1;

  void set(const std::string& name, const Matrix<Cyclotomic>& m) { table.insert(name, lang::Symbol{m, {}}); }
};

inline Matrix<Cyclotomic> gate_h() {
  const Cyclotomic s = Cyclotomic::sqrt2().inverse();
  return Matrix<Cyclotomic>::from_rows({{s, s}, {s, -s}});
}

inline Matrix<Cyclotomic> named_gate(const std::string& g) {
  using M = Matrix<Cyclotomic>;
  if (g == "H") return gate_h();
  if (g == "X") return M::from_rows({{0, 1}, {1, 0}});
  if (g == "Z") return M::diagonal({1, -1});
  if (g == "S") return M::diagonal({Cyclotomic(1), Cyclotomic::imag_unit()});
  if (g == "T") return M::diagonal({Cyclotomic(1), Cyclotomic::zeta()});
  // CNOT, control first
  return M::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

/// Predicate with random spectrum in [0, 1]: B B^dagger / tr(B B^dagger).
inline Matrix<Cyclotomic> random_predicate(Rng& rng, std::size_t dim) {
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(rng)) {
    case 0:
      return Matrix<Cyclotomic>::identity(dim);
    case 1: {
      std::vector<Cyclotomic> d(dim);
      std::bernoulli_distribution on(0.5);
      for (auto& x : d) x = on(rng) ? Cyclotomic(1) : Cyclotomic(0);
      return Matrix<Cyclotomic>::diagonal(d);
    }
    default: {
      std::uniform_int_distribution<std::size_t> rank(1, dim);
      for (;;) {
        const Matrix<Cyclotomic> p = random_psd(rng, dim, rank(rng));
        const Cyclotomic t = trace(p);
        if (!t.is_zero()) return t.inverse() * p;
      }
    }
  }
}

class ProgramGenerator {
 public:
  ProgramGenerator(Rng& rng, ProgramOptions opt) : rng_(rng), opt_(opt) {}

  RandomCase generate() {
    RandomCase c;
    c_ = &c;
    families_ = 0;
    declare_vars();
    c.program.name = "random";
    c.program.pre = "PRE";
    c.program.post = "POST";
    c.program.vars = vars_;
    c.program.body = seq(opt_.max_depth);
    c.set("POST", random_predicate(rng_, c.dim));
    c.set("PRE", Matrix<Cyclotomic>::zero(c.dim));
    if (opt_.annotated_loops) c.set("INV", Matrix<Cyclotomic>::identity(c.dim));
    return c;
  }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  void declare_vars() {
    vars_.clear();
    const std::size_t n = pick(1, opt_.max_vars);
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (total * 2 > opt_.max_dim) break;
      lang::VarDecl d;
      d.name = "v" + std::to_string(k);
      const std::size_t room = opt_.max_dim / total;
      if (room >= 3 && pick(0, 3) == 0) {
        d.kind = lang::VarKind::Int;
        d.dim = pick(3, std::min<std::size_t>(room, 4));
      }
      total *= d.dim;
      vars_.push_back(d);
    }
    c_->dim = total;
  }

  std::vector<std::size_t> qubits() const {
    std::vector<std::size_t> q;
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (vars_[k].dim == 2) q.push_back(k);
    return q;
  }

  lang::Stmt seq(std::size_t depth) {
    const std::size_t n = pick(1, opt_.max_stmts);
    if (n == 1) return base(depth);
    lang::Seq s;
    for (std::size_t k = 0; k < n; ++k) s.stmts.push_back(base(depth));
    return lang::make_stmt(std::move(s));
  }

  // a random register of one variable, or two qubits in random order
  std::vector<std::string> random_register(std::size_t& dim) {
    const auto q = qubits();
    if (q.size() >= 2 && pick(0, 2) == 0) {
      std::vector<std::size_t> two = q;
      std::shuffle(two.begin(), two.end(), rng_);
      dim = 4;
      return {vars_[two[0]].name, vars_[two[1]].name};
    }
    const std::size_t v = pick(0, vars_.size() - 1);
    dim = vars_[v].dim;
    return {vars_[v].name};
  }

  // projectors onto a random partition of the computational basis, rotated
  // into the Hadamard basis on a single qubit half the time
  std::vector<Matrix<Cyclotomic>> random_projectors(std::size_t dim, std::size_t k) {
    std::vector<std::size_t> label(dim);
    std::iota(label.begin(), label.end(), 0);
    for (auto& l : label) l %= k;
    std::shuffle(label.begin(), label.end(), rng_);
    std::vector<Matrix<Cyclotomic>> out(k, Matrix<Cyclotomic>(dim));
    for (std::size_t i = 0; i < dim; ++i) out[label[i]](i, i) = Cyclotomic(1);
    if (dim == 2 && pick(0, 1) == 0)
      for (auto& p : out) p = gate_h() * p * gate_h();
    return out;
  }

  std::string new_family(const std::vector<Matrix<Cyclotomic>>& ms) {
    const std::string name = "MEAS" + std::to_string(families_++);
    for (std::size_t k = 0; k < ms.size(); ++k) c_->set(lang::branch_symbol(name, k), ms[k]);
    return name;
  }

  lang::Stmt base(std::size_t depth) {
    std::vector<int> kinds{0, 1, 2, 2, 2};
    if (depth > 1) kinds.push_back(3);
    if (depth > 1 && opt_.bounded_loops) kinds.push_back(4);
    if (depth > 1 && opt_.annotated_loops) kinds.push_back(5);
    const int kind = kinds[pick(0, kinds.size() - 1)];
    switch (kind) {
      case 0:
        return lang::make_stmt(lang::Skip{});
      case 1:
        return lang::make_stmt(lang::Init{vars_[pick(0, vars_.size() - 1)].name});
      case 2:
        return unitary();
      case 3: {
        std::size_t dim = 0;
        auto reg = random_register(dim);
        const std::size_t k = pick(1, std::min<std::size_t>(3, dim));
        lang::Measure m;
        m.family = new_family(random_projectors(dim, k));
        m.vars = std::move(reg);
        for (std::size_t b = 0; b < k; ++b) m.branches.push_back(pick(0, 1) ? base(depth - 1) : seq(depth - 1));
        return lang::make_stmt(std::move(m));
      }
      default: {
        std::size_t dim = 0;
        auto reg = random_register(dim);
        const auto guard = random_projectors(dim, 2);
        const std::string fam = new_family(guard);
        lang::Stmt body = seq(depth - 1);
        if (kind == 4)
          return lang::make_stmt(lang::WhileN{pick(0, 4), fam + "_0", fam + "_1", std::move(reg), std::move(body)});
        return lang::make_stmt(lang::While{fam + "_0", fam + "_1", std::move(reg), "INV", std::move(body)});
      }
    }
  }

  lang::Stmt unitary() {
    const auto q = qubits();
    if (q.empty()) return lang::make_stmt(lang::Skip{});
    static const char* kGates[] = {"H", "X", "Z", "S", "T", "CNOT"};
    std::string g = kGates[pick(0, q.size() >= 2 ? 5 : 4)];
    lang::Unitary u;
    u.op = g;
    if (g == "CNOT") {
      std::vector<std::size_t> two = q;
      std::shuffle(two.begin(), two.end(), rng_);
      u.vars = {vars_[two[0]].name, vars_[two[1]].name};
    } else {
      u.vars = {vars_[q[pick(0, q.size() - 1)]].name};
    }
    c_->set(g, named_gate(g));
    return lang::make_stmt(std::move(u));
  }

  Rng& rng_;
  ProgramOptions opt_;
  RandomCase* c_ = nullptr;
  std::vector<lang::VarDecl> vars_;
  std::size_t families_ = 0;
};

inline RandomCase random_case(Rng& rng, ProgramOptions opt = {}) { return ProgramGenerator(rng, opt).generate(); }

}  // namespace qhl::testing

#endif  // QHL_TESTS_PROGRAMS_HPP
