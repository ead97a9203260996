#pragma once

#include "reilly/generate.hpp"
#include "reilly/mesh.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace reillylab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitSolver = 4;

struct RunConfig {
  std::string shape = "sphere";
  double radius = 1.0;
  double a = 1.0, b = 1.0, c = 1.0;
  int l = 2, m = 0;
  double delta = 0.05;
  double major = 2.0, minor = 0.5;
  int subdiv = 4;
  int k = 1;
  double p = 2.0;
  double tol = 0.05;
  int samples = 2000;
  std::uint64_t seed = 0;
  std::string family;       // "", "ellipsoid" or "perturbed"
  std::vector<double> t;    // family parameters
  std::string output;       // empty: stdout
  std::string format = "json";
  std::string input;        // mesh file; overrides the shape flags

  // command-specific
  int count = 4;            // spectrum
  std::string matrices;     // spectrum: MatrixMarket dump prefix
  std::string plot;         // pinch: gnuplot script path
  int start = 2;            // convergence: first level
};

reilly::ShapeSpec shape_from_config(const RunConfig& cfg);
reilly::ShapeSpec family_member(const RunConfig& cfg, double t);

// The mesh named by --input, or else the generated shape.
reilly::TriMesh resolve_mesh(const RunConfig& cfg);

// Every parameter that affects the output, in fixed order.
nlohmann::ordered_json config_json(const std::string& command, const RunConfig& cfg);

int cmd_gen(const RunConfig& cfg, std::ostream& log);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_pinch(const RunConfig& cfg, std::ostream& out);
int cmd_convergence(const RunConfig& cfg, std::ostream& out);
int cmd_geometry(const RunConfig& cfg, std::ostream& out);

// gnuplot script plotting the sweep columns of `csv_path` against t.
void write_plot_script(std::ostream& out, const std::string& csv_path);

}  // namespace reillylab
