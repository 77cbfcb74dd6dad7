// hecke_metro: exact and closed-form mixing analysis of Metropolis chains on
// finite Coxeter groups. Exit status 0 = pass, 1 = failed check, 2 = usage error.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using heckemetro::cli::RunConfig;

void add_group_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "symmetric | hypercube | dihedral")->required();
  sub->add_option("--n", c.n, "rank parameter")->required();
  sub->add_option("--theta", c.theta, "Mallows parameter in (0, 1], as p/q or a decimal")->required();
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", c.output, "write to this file instead of stdout");
}

int emit(const RunConfig& c, const heckemetro::cli::CommandResult& r) {
  if (c.output.empty()) {
    std::cout << r.text;
    std::cout.flush();
  } else {
    heckemetro::cli::write_atomically(c.output, r.text);
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metropolis chains on finite Coxeter groups via Hecke algebra multiplication"};
  app.require_subcommand(1);
  RunConfig c;

  auto* analyze = app.add_subcommand("analyze", "chi-square and TV distance per step, brute force against closed form");
  add_group_options(analyze, c);
  analyze->add_option("--scan", c.scan, "random | short | long")->check(CLI::IsMember({"random", "short", "long"}));
  analyze->add_option("--lmin", c.lmin, "first step count");
  analyze->add_option("--lmax", c.lmax, "last step count");
  analyze->add_flag("--averaged", c.averaged, "average over a Mallows-distributed start");
  analyze->add_option("--start", c.start, "comma-separated starting element (default: identity)");
  analyze->add_option("--mode", c.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  add_output_options(analyze, c);

  auto* verify = app.add_subcommand("verify", "exact identities between kernels, Hecke algebra and characters");
  add_group_options(verify, c);
  verify->add_flag("--inject-fault", c.inject_fault, "perturb K_1 to demonstrate a failing check");
  add_output_options(verify, c);

  auto* sample = app.add_subcommand("sample", "draw from the Mallows distribution and compare moments");
  add_group_options(sample, c);
  sample->add_option("--seed", c.seed, "random seed");
  sample->add_option("--samples", c.samples, "number of draws");
  sample->add_flag("--emit-samples", c.emit_samples, "include every draw in the output");
  add_output_options(sample, c);

  auto* bounds = app.add_subcommand("bounds", "evaluate the upper bounds on a grid of (n, theta, c)");
  bounds->add_option("--n", c.bound_n, "values of n")->delimiter(',');
  bounds->add_option("--theta", c.bound_theta, "values of theta in (0, 1)")->delimiter(',');
  bounds->add_option("--c", c.bound_c, "offsets c")->delimiter(',');
  bounds->add_option("--lead-n", c.lead_n, "n for the lead-constant table");
  bounds->add_option("--lead-theta", c.lead_theta, "theta values for the lead-constant table")->delimiter(',');
  add_output_options(bounds, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return emit(c, heckemetro::cli::cmd_analyze(c));
    if (*verify) return emit(c, heckemetro::cli::cmd_verify(c));
    if (*bounds) return emit(c, heckemetro::cli::cmd_bounds(c));
    if (*sample) {
      const auto out = heckemetro::cli::cmd_sample_full(c);
      if (!out.summary_for_stderr.empty()) std::cerr << out.summary_for_stderr;
      return emit(c, out.result);
    }
  } catch (const heckemetro::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const heckemetro::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
