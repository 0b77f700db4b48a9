#ifndef QHL_DRIVER_HPP
#define QHL_DRIVER_HPP

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhl/lang/parser.hpp"
#include "qhl/lang/validate.hpp"
#include "qhl/semantics.hpp"
#include "qhl/wlp.hpp"
#include "qhl/wlp_term.hpp"

namespace qhl::cli {

using Json = nlohmann::ordered_json;

enum class BackendChoice { Exact, Float, Auto };
enum class ShowMode { Term, Matrix };

enum ExitCode : int { kVerified = 0, kRefuted = 1, kUnknown = 2, kInputError = 3 };

struct RunConfig {
  std::string program_path;  // a .qhl file or a corpus directory
  std::string matrices_path;  // empty: matrices.txt next to the program
  BackendChoice backend = BackendChoice::Auto;
  double tol = kDefaultPsdTol;
  std::size_t k_max = 1000;
  bool json = false;
  std::size_t jobs = 1;
  bool timings = true;
  bool print_pre = false;
  ShowMode show = ShowMode::Term;
  std::string state;  // simulate: |0101>, a matrix name, or empty for all-zero
};

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return kVerified;
    case Verdict::Refuted:
      return kRefuted;
    case Verdict::Unknown:
      return kUnknown;
  }
  return kInputError;
}

inline bool color_enabled() {
  const char* v = std::getenv("QHL_COLOR");
  if (!v) return false;
  const std::string s(v);
  return !(s.empty() || s == "0" || s == "off" || s == "never" || s == "false");
}

inline std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

struct Inputs {
  std::string program_file;
  std::string matrices_file;
  lang::Program program;
  lang::SymbolTable table;
};

/// An input problem reported with exit code 3.
class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::pair<std::string, std::string> resolve_paths(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::path prog(cfg.program_path);
  fs::path dir = prog.parent_path();
  if (fs::is_directory(prog)) {
    dir = prog;
    prog = prog / "program.qhl";
  }
  std::string mats = cfg.matrices_path.empty() ? (dir / "matrices.txt").string() : cfg.matrices_path;
  return {prog.string(), mats};
}

inline Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  std::tie(in.program_file, in.matrices_file) = resolve_paths(cfg);
  const std::string src = read_file(in.program_file);
  const std::string mats = read_file(in.matrices_file);
  try {
    in.program = lang::parse_program(src);
  } catch (const ParseError& e) {
    throw InputError(in.program_file + ":" + e.what());
  }
  try {
    in.table = lang::parse_matrix_file(mats);
  } catch (const ParseError& e) {
    throw InputError(in.matrices_file + ":" + e.what());
  }
  return in;
}

inline Backend pick_backend(BackendChoice c, const lang::SymbolTable& t) {
  switch (c) {
    case BackendChoice::Exact:
      return Backend::Exact;
    case BackendChoice::Float:
      return Backend::Float;
    case BackendChoice::Auto:
      return t.all_exact() ? Backend::Exact : Backend::Float;
  }
  return Backend::Exact;
}

// ---------------------------------------------------------------- verify

struct VcReport {
  std::string origin;
  Discharge result = Discharge::Unknown;
  std::optional<double> min_eigenvalue_lower_bound;
};

struct VerifyReport {
  std::string program;
  Verdict verdict = Verdict::Unknown;
  std::vector<VcReport> vcs;
  Backend backend = Backend::Exact;
  std::size_t dim = 0;
  long long wall_time_ms = 0;
  std::string precondition;  // P' rendered as a matrix
};

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["program"] = r.program;
  j["verdict"] = verdict_name(r.verdict);
  Json vcs = Json::array();
  for (const auto& vc : r.vcs) {
    Json v;
    v["origin"] = vc.origin;
    v["verdict"] = discharge_name(vc.result);
    if (vc.min_eigenvalue_lower_bound) v["min_eigenvalue_lower_bound"] = *vc.min_eigenvalue_lower_bound;
    vcs.push_back(std::move(v));
  }
  j["vcs"] = std::move(vcs);
  j["backend"] = backend_name(r.backend);
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

template <Scalar S>
VerifyReport verify_model(const lang::ValidatedModel<S>& model, const RunConfig& cfg) {
  VerifyReport rep;
  rep.program = model.program.name;
  rep.backend = is_exact_v<S> ? Backend::Exact : Backend::Float;
  rep.dim = model.ctx.total_dim();
  const ProofObligations<S> ob = generate_vcs(model);
  const std::vector<DischargeResult> res = discharge_all(ob.vcs, cfg.tol, cfg.jobs);
  for (std::size_t k = 0; k < ob.vcs.size(); ++k) {
    VcReport v{ob.vcs[k].origin, res[k].result, std::nullopt};
    if (res[k].min_eigenvalue) {
      // the Jacobi estimate less the acceptance tolerance
      const Matrix<S> diff = ob.vcs[k].rhs - ob.vcs[k].lhs;
      v.min_eigenvalue_lower_bound = *res[k].min_eigenvalue - scaled_tolerance(diff, cfg.tol);
    }
    rep.vcs.push_back(std::move(v));
  }
  rep.verdict = combine(res);
  if (cfg.print_pre) rep.precondition = ob.precondition.to_string();
  return rep;
}

/// Parses, validates and verifies; InputError, ParseError and
/// ValidationError propagate.
inline VerifyReport run_verify(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Inputs in = load_inputs(cfg);
  VerifyReport rep;
  if (pick_backend(cfg.backend, in.table) == Backend::Exact)
    rep = verify_model(lang::validate<Cyclotomic>(in.program, in.table), cfg);
  else
    rep = verify_model(lang::validate<ComplexFloat>(in.program, in.table, kHermitianTol), cfg);
  if (cfg.timings)
    rep.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline void print_report(const VerifyReport& r, std::ostream& out) {
  out << "program " << r.program << " (backend " << backend_name(r.backend) << ", D = " << r.dim << ")\n";
  for (const auto& vc : r.vcs) {
    const char* code = vc.result == Discharge::True ? "32" : vc.result == Discharge::False ? "31" : "33";
    out << "  " << paint(std::string("[") + discharge_name(vc.result) + "]", code) << " " << vc.origin;
    if (vc.min_eigenvalue_lower_bound) out << "  (min eigenvalue >= " << *vc.min_eigenvalue_lower_bound << ")";
    out << "\n";
  }
  if (!r.precondition.empty()) out << "P' =\n" << r.precondition << "\n";
  const char* code = r.verdict == Verdict::Verified ? "32" : r.verdict == Verdict::Refuted ? "31" : "33";
  out << "verdict: " << paint(verdict_name(r.verdict), code) << "\n";
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const lang::ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerifyReport r = run_verify(cfg);
    if (cfg.json)
      out << to_json(r).dump(2) << "\n";
    else
      print_report(r, out);
    return exit_code(r.verdict);
  });
}

// ---------------------------------------------------------------- wlp

inline int cmd_wlp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    std::string text;
    Backend backend = pick_backend(cfg.backend, in.table);
    if (cfg.show == ShowMode::Term) {
      // validate anyway so that a term is only shown for a well-formed model
      if (backend == Backend::Exact)
        lang::validate<Cyclotomic>(in.program, in.table);
      else
        lang::validate<ComplexFloat>(in.program, in.table);
      text = wlp_term(in.program).render();
    } else if (backend == Backend::Exact) {
      const auto m = lang::validate<Cyclotomic>(in.program, in.table);
      text = wlp(m.program.body, m.post(), m).to_string();
    } else {
      const auto m = lang::validate<ComplexFloat>(in.program, in.table);
      text = wlp(m.program.body, m.post(), m).to_string();
    }
    if (cfg.json) {
      Json j;
      j["program"] = in.program.name;
      j["show"] = cfg.show == ShowMode::Term ? "term" : "matrix";
      j["backend"] = backend_name(backend);
      j["result"] = text;
      out << j.dump(2) << "\n";
    } else {
      out << text << "\n";
    }
    return 0;
  });
}

// ---------------------------------------------------------------- simulate

/// Density matrix for a basis-state shorthand such as |0101>; one digit per
/// declared variable, in declaration order.
template <Scalar S>
Matrix<S> basis_state(const std::string& spec, const VarContext& ctx) {
  if (spec.size() < 2 || spec.front() != '|' || spec.back() != '>')
    throw InputError("malformed basis state '" + spec + "' (expected |d1d2...>)");
  const std::string digits = spec.substr(1, spec.size() - 2);
  if (digits.size() != ctx.size())
    throw InputError("basis state '" + spec + "' has " + std::to_string(digits.size()) + " digits for " +
                     std::to_string(ctx.size()) + " variables");
  std::size_t index = 0;
  for (std::size_t v = 0; v < digits.size(); ++v) {
    const char ch = digits[v];
    if (ch < '0' || ch > '9' || static_cast<std::size_t>(ch - '0') >= ctx.dim(v))
      throw InputError("digit '" + std::string(1, ch) + "' out of range for variable '" + ctx.names()[v] + "'");
    index += static_cast<std::size_t>(ch - '0') * ctx.stride(v);
  }
  return Matrix<S>::unit(ctx.total_dim(), index, index);
}

template <Scalar S>
Matrix<S> input_state(const RunConfig& cfg, const lang::SymbolTable& table, const VarContext& ctx) {
  if (cfg.state.empty()) return Matrix<S>::unit(ctx.total_dim(), 0, 0);
  if (cfg.state.front() == '|') return basis_state<S>(cfg.state, ctx);
  const lang::Symbol* s = table.find(cfg.state);
  if (!s) throw InputError("unknown state '" + cfg.state + "'");
  Matrix<S> rho;
  if constexpr (is_exact_v<S>) {
    if (!s->exact()) throw InputError("state '" + cfg.state + "' has float entries");
    rho = *s->exact();
  } else {
    rho = s->as_float();
  }
  if (rho.dim() != ctx.total_dim()) throw InputError("state '" + cfg.state + "' has the wrong dimension");
  if (!loewner_leq(Matrix<S>::zero(rho.dim()), rho)) throw InputError("state '" + cfg.state + "' is not positive semidefinite");
  return rho;
}

template <Scalar S>
int simulate_model(const lang::ValidatedModel<S>& model, const RunConfig& cfg, const lang::SymbolTable& table,
                   std::ostream& out) {
  SemanticsOptions opt;
  opt.k_max = cfg.k_max;
  const Matrix<S> rho = input_state<S>(cfg, table, model.ctx);
  const Simulation<S> sim = simulate(model.program.body, rho, model, opt);
  const S tr = trace(sim.state);
  const S tr_post = trace(model.post() * sim.state);
  if (cfg.json) {
    Json j;
    j["program"] = model.program.name;
    j["backend"] = is_exact_v<S> ? "exact" : "float";
    j["trace"] = tr.to_string();
    j["post_expectation"] = tr_post.to_string();
    j["complete"] = sim.complete;
    Json rows = Json::array();
    for (std::size_t r = 0; r < sim.state.dim(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < sim.state.dim(); ++c) row.push_back(sim.state(r, c).to_string());
      rows.push_back(std::move(row));
    }
    j["state"] = std::move(rows);
    Json branches = Json::array();
    for (const auto& [pos, traces] : sim.branch_traces) {
      Json b;
      b["line"] = pos.first;
      b["col"] = pos.second;
      Json ts = Json::array();
      for (const auto& t : traces) ts.push_back(t.to_string());
      b["traces"] = std::move(ts);
      branches.push_back(std::move(b));
    }
    j["branches"] = std::move(branches);
    out << j.dump(2) << "\n";
  } else {
    out << "output state =\n" << sim.state.to_string() << "\n";
    out << "trace = " << tr.to_string() << "\n";
    out << "tr(" << model.program.post << " * output) = " << tr_post.to_string() << "\n";
    for (const auto& [pos, traces] : sim.branch_traces) {
      out << "measurement at line " << pos.first << ":" << pos.second << ":";
      for (std::size_t k = 0; k < traces.size(); ++k) out << " [" << k << "] " << traces[k].to_string();
      out << "\n";
    }
    if (!sim.complete) out << "warning: a loop reached k_max; the output is a lower bound\n";
  }
  return 0;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    if (pick_backend(cfg.backend, in.table) == Backend::Exact)
      return simulate_model(lang::validate<Cyclotomic>(in.program, in.table), cfg, in.table, out);
    return simulate_model(lang::validate<ComplexFloat>(in.program, in.table), cfg, in.table, out);
  });
}

// ---------------------------------------------------------------- check-matrices

struct SymbolRoles {
  std::map<std::string, std::size_t> unitary;    // name -> register dim
  std::map<std::string, std::size_t> predicate;  // name -> D
  struct Family {
    std::vector<std::string> members;
    std::size_t dim;
  };
  std::map<std::string, Family> measurements;  // label -> members
};

inline void collect_roles(const lang::Stmt& s, const VarContext& ctx, SymbolRoles& roles) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::Unitary>) {
          roles.unitary[n.op] = ctx.register_dim(ctx.indices_of(n.vars));
        } else if constexpr (std::is_same_v<T, lang::Seq>) {
          for (const auto& c : n.stmts) collect_roles(c, ctx, roles);
        } else if constexpr (std::is_same_v<T, lang::Measure>) {
          SymbolRoles::Family f{{}, ctx.register_dim(ctx.indices_of(n.vars))};
          for (std::size_t k = 0; k < n.branches.size(); ++k) f.members.push_back(lang::branch_symbol(n.family, k));
          roles.measurements[n.family] = f;
          for (const auto& c : n.branches) collect_roles(c, ctx, roles);
        } else if constexpr (std::is_same_v<T, lang::While> || std::is_same_v<T, lang::WhileN>) {
          roles.measurements[n.m0 + "," + n.m1] = {{n.m0, n.m1}, ctx.register_dim(ctx.indices_of(n.vars))};
          if constexpr (std::is_same_v<T, lang::While>) roles.predicate[n.invariant] = ctx.total_dim();
          collect_roles(*n.body, ctx, roles);
        }
      },
      s.node);
}

struct SymbolCheck {
  bool hermitian = false;
  bool unitary = false;
  bool predicate = false;
};

template <Scalar S>
SymbolCheck check_symbol(const Matrix<S>& m) {
  SymbolCheck c;
  c.hermitian = is_hermitian(m);
  c.unitary = is_unitary(m);
  c.predicate = c.hermitian && loewner_leq(Matrix<S>::zero(m.dim()), m) && loewner_leq(m, Matrix<S>::identity(m.dim()));
  return c;
}

template <Scalar S>
bool complete_family(const std::vector<Matrix<S>>& ms) {
  Matrix<S> sum(ms.front().dim());
  for (const auto& m : ms) sum += dagger(m) * m;
  if constexpr (is_exact_v<S>)
    return sum == Matrix<S>::identity(sum.dim());
  else
    return max_abs_diff(sum, Matrix<S>::identity(sum.dim())) <= kHermitianTol;
}

inline int cmd_check_matrices(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(cfg);
    const VarContext ctx(in.program.vars);
    SymbolRoles roles;
    roles.predicate[in.program.pre] = ctx.total_dim();
    roles.predicate[in.program.post] = ctx.total_dim();
    collect_roles(in.program.body, ctx, roles);

    auto yn = [](bool b) { return b ? "yes" : "no"; };
    bool all_ok = true;
    auto fail = [&](const std::string& msg) {
      all_ok = false;
      out << "  " << paint("FAIL", "31") << " " << msg << "\n";
    };
    for (const auto& [name, sym] : in.table.entries()) {
      const SymbolCheck c = sym.exact() ? check_symbol(*sym.exact()) : check_symbol(sym.as_float());
      out << name << ": " << sym.dim() << "x" << sym.dim() << ", " << backend_name(sym.backend())
          << ", hermitian: " << yn(c.hermitian) << ", unitary: " << yn(c.unitary)
          << ", predicate-bounds: " << yn(c.predicate) << "\n";
      if (auto it = roles.unitary.find(name); it != roles.unitary.end()) {
        if (sym.dim() != it->second) fail(name + " used as a gate on dimension " + std::to_string(it->second));
        else if (!c.unitary) fail(name + " used as a gate but not unitary");
      }
      if (auto it = roles.predicate.find(name); it != roles.predicate.end()) {
        if (sym.dim() != it->second) fail(name + " used as a predicate on dimension " + std::to_string(it->second));
        else if (!c.predicate) fail(name + " used as a predicate but violates 0 <= P <= I");
      }
    }
    auto need = [&](const std::string& name) {
      if (!in.table.contains(name)) fail(name + " is referenced by the program but not defined");
    };
    for (const auto& [name, _] : roles.unitary) need(name);
    for (const auto& [name, _] : roles.predicate) need(name);
    for (const auto& [label, fam] : roles.measurements) {
      bool present = true, dims = true, exact = true;
      for (const auto& m : fam.members) {
        const lang::Symbol* s = in.table.find(m);
        if (!s) {
          need(m);
          present = false;
          continue;
        }
        if (s->dim() != fam.dim) dims = false;
        if (!s->exact()) exact = false;
      }
      if (!present) continue;
      if (!dims) {
        fail("measurement " + label + " has members of the wrong dimension");
        continue;
      }
      bool complete;
      if (exact) {
        std::vector<Matrix<Cyclotomic>> ms;
        for (const auto& m : fam.members) ms.push_back(*in.table.find(m)->exact());
        complete = complete_family(ms);
      } else {
        std::vector<Matrix<ComplexFloat>> ms;
        for (const auto& m : fam.members) ms.push_back(in.table.find(m)->as_float());
        complete = complete_family(ms);
      }
      out << "measurement " << label << " (" << fam.members.size() << " outcomes): complete: " << yn(complete)
          << "\n";
      if (!complete) fail("measurement " + label + " is incomplete");
    }
    out << (all_ok ? "all checks passed" : "some checks failed") << "\n";
    return all_ok ? 0 : 1;
  });
}

}  // namespace qhl::cli

#endif  // QHL_DRIVER_HPP
