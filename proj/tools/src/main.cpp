// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinpath_tools/runner.hpp"

namespace {

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> flags;
};

const std::vector<std::pair<const char*, const char*>> kMcFlags = {
    {"j", "spin (half-integer)"},
    {"symbol", "symbol name, JSON or @file (default 0)"},
    {"t", "time"},
    {"z", "start point, e.g. 0.2-0.1i"},
    {"zp", "end point"},
    {"n-paths", "number of paths (default 100000)"},
    {"m-steps", "time steps (default max(256, ceil(64 nu t)))"},
    {"seed", "RNG seed (default 0)"},
    {"form", "strat or ito (default strat)"},
};

std::vector<std::pair<const char*, const char*>> mc_plus(std::vector<std::pair<const char*, const char*>> extra,
                                                         bool with_nu = true) {
  auto flags = kMcFlags;
  if (with_nu) flags.emplace_back("nu", "diffusion constant");
  flags.insert(flags.end(), extra.begin(), extra.end());
  return flags;
}

std::vector<CommandSpec> command_specs() {
  return {
      {"symbols-verify", "check tabulated spin symbols against direct J-matrix products", {{"j", "comma list of spins"}}},
      {"oracle",
       "exact coherent-state kernel",
       {{"j", "spin"},
        {"t", "time"},
        {"z", "start point"},
        {"zp", "end point"},
        {"hamiltonian", "monomials, e.g. \"0.5*J+ J- + 1*J3\""},
        {"symbol", "symbol instead of --hamiltonian"},
        {"mode", "semigroup or unitary"}}},
      {"mc", "Monte Carlo kernel estimate", mc_plus({})},
      {"sweep",
       "estimates over increasing nu",
       mc_plus({{"nus", "comma list of nu"}, {"stop-on-variance", "true or false (default true)"}}, false)},
      {"long-time", "long-time estimates at fixed nu", mc_plus({{"u", "comma list of horizons"}})},
      {"unitary", "unitary kernel estimates", mc_plus({{"nus", "comma list of nu"}})},
      {"pde-spectrum",
       "low spectrum of the magnetic operator",
       {{"j", "spin"},
        {"L", "box half-width (default 12)"},
        {"n", "grid points per side (default 192)"},
        {"k", "number of eigenpairs"},
        {"order", "stencil order 1, 3 or 5 (default 3)"},
        {"cluster-floor", "gap rule floor (default 0.2/L^2)"},
        {"dump", "write eigenvectors to this binary file"}}},
      {"pde-kernel",
       "grid kernel by splitting propagation",
       {{"j", "spin"},
        {"symbol", "symbol (default 0)"},
        {"nu", "diffusion constant"},
        {"t", "time"},
        {"z", "start point"},
        {"zp", "end point"},
        {"L", "box half-width (default 10)"},
        {"n", "grid points per side (default 321)"},
        {"n-time", "time steps (default 16)"},
        {"order", "stencil order (default 3)"}}},
      {"contract",
       "large-j contraction against the Fock oracle",
       {{"hamiltonian", "monomials (default 1*J3)"},
        {"js", "comma list of spins (default 5,10,20,40)"},
        {"t", "time"},
        {"z", "start point"},
        {"zp", "end point"},
        {"limit", "coefficients of the radial limit symbol in |z|^2 (default -1,1)"},
        {"n-max", "Fock truncation (default 40)"}}},
      {"quantize", "generalized-j quantization", {{"j", "spin"}, {"symbol", "symbol (default 1)"}}},
  };
}

}  // namespace

int main(int argc, char** argv) {
  namespace st = spinpath::tools;
  CLI::App app{"spinpath: coherent-state path integrals for spin systems"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = st::default_threads();
  std::string out;
  bool quiet = false;
  app.add_option("--threads", threads, "worker threads (default SPINPATH_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "artifact prefix; writes <prefix>.json");
  app.add_flag("--quiet", quiet, "suppress the summary line");

  const auto specs = command_specs();
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    auto& slot = values[spec.name];
    for (const auto& [flag, help] : spec.flags) {
      const std::string key = flag;
      sub->add_option_function<std::string>(
          "--" + key, [&slot, key](const std::string& v) { slot[key] = v; }, help);
    }
  }
  std::string artifact;
  CLI::App* rep = app.add_subcommand("replay", "re-execute a stored artifact and compare");
  rep->add_option("artifact", artifact, "path to a .json artifact")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return st::kValidation;
  }

  st::RunContext ctx{threads, out, quiet};
  st::RunOutcome res;
  if (rep->parsed()) {
    res = st::replay(artifact, ctx);
  } else {
    st::RunConfig cfg;
    for (const auto& spec : specs) {
      if (app.got_subcommand(spec.name)) {
        cfg.command = spec.name;
        cfg.params = values[spec.name];
      }
    }
    res = st::run(cfg, ctx);
  }
  if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
  if (!quiet && !res.summary.empty()) std::cout << res.summary << "\n";
  return res.exit_code;
}
