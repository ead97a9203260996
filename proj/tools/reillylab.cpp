#include "commands.hpp"

#include "reilly/errors.hpp"
#include "reilly/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using reillylab::RunConfig;

namespace {

void add_shared_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--shape", cfg.shape, "sphere | ellipsoid | perturbed | torus")
      ->check(CLI::IsMember({"sphere", "ellipsoid", "perturbed", "torus"}));
  app.add_option("--radius", cfg.radius, "sphere radius")->check(CLI::PositiveNumber);
  app.add_option("--a", cfg.a, "ellipsoid semi-axis x")->check(CLI::PositiveNumber);
  app.add_option("--b", cfg.b, "ellipsoid semi-axis y")->check(CLI::PositiveNumber);
  app.add_option("--c", cfg.c, "ellipsoid semi-axis z")->check(CLI::PositiveNumber);
  app.add_option("--l", cfg.l, "spherical harmonic degree")->check(CLI::Range(0, 60));
  app.add_option("--m", cfg.m, "spherical harmonic order")->check(CLI::Range(0, 60));
  app.add_option("--delta", cfg.delta, "bump amplitude");
  app.add_option("--major", cfg.major, "torus major radius")->check(CLI::PositiveNumber);
  app.add_option("--minor", cfg.minor, "torus minor radius")->check(CLI::PositiveNumber);
  app.add_option("--subdiv", cfg.subdiv, "subdivision level (0..7)")->check(CLI::Range(0, 7));
  app.add_option("--k", cfg.k, "curvature order (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--p", cfg.p, "norm exponent, >= 1")->check(CLI::Range(1.0, 1e6));
  app.add_option("--tol", cfg.tol, "discretization slack")->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "sphere samples for the density distance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "solver seed");
  app.add_option("--family", cfg.family, "ellipsoid | perturbed sweep")
      ->check(CLI::IsMember({"ellipsoid", "perturbed"}));
  app.add_option("--t", cfg.t, "family parameters, comma separated")->delimiter(',');
  app.add_option("-o,--output", cfg.output, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Spectral pinching experiments on triangle meshes"};
  app.set_version_flag("--version", reilly::library_version());
  app.set_config("--config", "", "file of `key = value` lines; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  add_shared_options(app, cfg);

  auto* gen = app.add_subcommand("gen", "generate a mesh and write it (.off/.obj)");

  auto* spectrum = app.add_subcommand("spectrum", "lowest nonzero Laplace-Beltrami eigenvalues");
  spectrum->add_option("mesh", cfg.input, "input mesh (.off/.obj); default: generated shape");
  spectrum->add_option("--count", cfg.count, "number of eigenvalues")->check(CLI::Range(1, 64));
  spectrum->add_option("--matrices", cfg.matrices, "write <prefix>_stiffness.mtx and <prefix>_mass.mtx");

  auto* pinch = app.add_subcommand("pinch", "pinching report, or a family sweep as CSV");
  pinch->add_option("mesh", cfg.input, "input mesh (.off/.obj); default: generated shape");
  pinch->add_option("--plot", cfg.plot, "also write a gnuplot script for the CSV");

  auto* convergence = app.add_subcommand("convergence", "refinement study over subdivision levels");
  convergence->add_option("--start", cfg.start, "first level (last is --subdiv)")->check(CLI::Range(0, 7));

  auto* geometry = app.add_subcommand("geometry", "per-vertex curvature CSV");
  geometry->add_option("mesh", cfg.input, "input mesh (.off/.obj); default: generated shape");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return reillylab::kExitUsage;
  }

  try {
    if (*gen) return reillylab::cmd_gen(cfg, std::cout);
    if (*spectrum) return reillylab::cmd_spectrum(cfg, std::cout);
    if (*pinch) return reillylab::cmd_pinch(cfg, std::cout);
    if (*convergence) return reillylab::cmd_convergence(cfg, std::cout);
    if (*geometry) return reillylab::cmd_geometry(cfg, std::cout);
  } catch (const reilly::SolverError& e) {
    std::cerr << "error: solver did not converge: " << e.what() << "\n";
    return reillylab::kExitSolver;
  } catch (const reilly::DisconnectedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return reillylab::kExitInput;
  } catch (const std::exception& e) {
    // parse, validation, precondition, argument and I/O errors
    std::cerr << "error: " << e.what() << "\n";
    return reillylab::kExitInput;
  }
  return reillylab::kExitUsage;
}
