// laplaceqm <spectrum|wavefunction|validate> --kind <name> [--param k=v ...]
//           --grid min,max,count [--grid-space xi|coordinate]
//           [--method residue|real|circle|series|morse|closed] [--radius R] [--steps N]
//           [--out path] [--config path]

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "laplaceqm/error.hpp"
#include "laplaceqm/run_config.hpp"

namespace {

struct Flags {
  std::string config, kind, grid, grid_space, method, out;
  std::vector<std::string> params;
  std::string radius, steps;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat key = value file; flags override it");
  cmd->add_option("--kind", f.kind, "problem kind, e.g. coulomb3d_cont");
  cmd->add_option("--param", f.params, "physical parameter or quantum number, k=v (repeatable)");
  cmd->add_option("--grid", f.grid, "min,max,count");
  cmd->add_option("--grid-space", f.grid_space, "xi or coordinate (default coordinate)");
  cmd->add_option("--method", f.method, "residue|real|circle|series|morse|closed");
  cmd->add_option("--radius", f.radius, "circle radius R (> 1)");
  cmd->add_option("--steps", f.steps, "circle steps");
  cmd->add_option("--out", f.out, "output CSV path (default stdout)");
}

laplaceqm::KeyValues merge(const Flags& f) {
  laplaceqm::KeyValues kv;
  if (!f.config.empty()) kv = laplaceqm::read_key_value_file(f.config);
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) kv[key] = v;
  };
  set("kind", f.kind);
  set("grid", f.grid);
  set("grid_space", f.grid_space);
  set("method", f.method);
  set("radius", f.radius);
  set("steps", f.steps);
  set("out", f.out);
  for (const auto& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw laplaceqm::Error(laplaceqm::ErrorCode::InvalidConfig, "--param expects k=v, got '" + p + "'");
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace contour-integral solutions of the Schroedinger equation"};
  app.require_subcommand(1);
  Flags flags;
  auto* spectrum = app.add_subcommand("spectrum", "bound-state energies as CSV (n, N, E)");
  auto* wavefunction = app.add_subcommand("wavefunction", "sample Phi and psi on a grid");
  auto* validate = app.add_subcommand("validate", "compare the three continuum routes on a xi grid");
  for (auto* c : {spectrum, wavefunction, validate}) add_flags(c, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  laplaceqm::RunConfig cfg;
  try {
    cfg = laplaceqm::build_run_config(merge(flags));
  } catch (const laplaceqm::Error& e) {
    std::cerr << "laplaceqm: " << e.what() << '\n';
    return 2;
  }

  if (spectrum->parsed()) return laplaceqm::cmd_spectrum(cfg, std::cout, std::cerr);
  if (wavefunction->parsed()) return laplaceqm::cmd_wavefunction(cfg, std::cout, std::cerr);
  return laplaceqm::cmd_validate(cfg, std::cout, std::cerr);
}
