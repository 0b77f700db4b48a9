#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qhl/driver.hpp"

int main(int argc, char** argv) {
  using namespace qhl::cli;
  CLI::App app{"Quantum Hoare logic verifier"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, BackendChoice> backends{
      {"exact", BackendChoice::Exact}, {"float", BackendChoice::Float}, {"auto", BackendChoice::Auto}};
  const std::map<std::string, ShowMode> shows{{"term", ShowMode::Term}, {"matrix", ShowMode::Matrix}};

  auto common = [&](CLI::App* c) {
    c->add_option("program", cfg.program_path, "program file or corpus directory")->required();
    c->add_option("--matrices", cfg.matrices_path, "matrix file (default: matrices.txt next to the program)");
    c->add_option("--backend", cfg.backend, "exact, float or auto")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
    c->add_option("--tol", cfg.tol, "float PSD tolerance")->check(CLI::PositiveNumber);
    c->add_option("--kmax", cfg.k_max, "loop unrolling bound for simulation")->check(CLI::PositiveNumber);
    c->add_flag("--json", cfg.json, "machine-readable output");
    c->add_option("--jobs", cfg.jobs, "parallel VC discharge")->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand("verify", "verify {pre} body {post}");
  common(verify);
  verify->add_flag("--print-pre", cfg.print_pre, "print the computed precondition");
  verify->add_flag("--timings,!--no-timings", cfg.timings, "report wall_time_ms as 0");

  CLI::App* wlp = app.add_subcommand("wlp", "weakest liberal precondition of the body");
  common(wlp);
  wlp->add_option("--show", cfg.show, "term or matrix")->transform(CLI::CheckedTransformer(shows, CLI::ignore_case));

  CLI::App* sim = app.add_subcommand("simulate", "apply the denotational semantics to an input state");
  common(sim);
  sim->add_option("--state", cfg.state, "basis state like |0101> or a matrix name (default: all zero)");

  CLI::App* check = app.add_subcommand("check-matrices", "report properties of every matrix");
  common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  if (*verify) return cmd_verify(cfg, std::cout, std::cerr);
  if (*wlp) return cmd_wlp(cfg, std::cout, std::cerr);
  if (*sim) return cmd_simulate(cfg, std::cout, std::cerr);
  return cmd_check_matrices(cfg, std::cout, std::cerr);
}
