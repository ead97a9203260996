#include "commands.hpp"

#include "reilly/curvature.hpp"
#include "reilly/errors.hpp"
#include "reilly/pinching.hpp"
#include "reilly/report.hpp"
#include "reilly/spectral.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace reillylab {

using reilly::TriMesh;
using ojson = nlohmann::ordered_json;

namespace {

// Writes to -o when given, stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw reilly::IoError("cannot open output file: " + path);
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }
  void finish(const std::string& path) {
    out_->flush();
    if (!*out_) throw reilly::IoError("write failed: " + (path.empty() ? std::string("<stdout>") : path));
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

reilly::ReportOptions report_options(const RunConfig& cfg) {
  reilly::ReportOptions opt;
  opt.solver.seed = cfg.seed;
  opt.samples = cfg.samples;
  opt.tol_disc = cfg.tol;
  return opt;
}

std::string shape_label(const RunConfig& cfg) {
  if (!cfg.input.empty()) return "mesh";
  return cfg.shape;
}

}  // namespace

reilly::ShapeSpec shape_from_config(const RunConfig& cfg) {
  if (cfg.shape == "sphere") return reilly::Sphere{cfg.radius};
  if (cfg.shape == "ellipsoid") return reilly::Ellipsoid{cfg.a, cfg.b, cfg.c};
  if (cfg.shape == "perturbed") return reilly::PerturbedSphere{cfg.l, cfg.m, cfg.delta};
  if (cfg.shape == "torus") return reilly::Torus{cfg.major, cfg.minor};
  throw reilly::InvalidArgument("unknown shape: " + cfg.shape);
}

reilly::ShapeSpec family_member(const RunConfig& cfg, double t) {
  if (cfg.family == "ellipsoid") return reilly::Ellipsoid{1.0, 1.0, 1.0 + t};
  if (cfg.family == "perturbed") return reilly::PerturbedSphere{cfg.l, cfg.m, t};
  throw reilly::InvalidArgument("unknown family: " + cfg.family);
}

TriMesh resolve_mesh(const RunConfig& cfg) {
  if (!cfg.input.empty()) return reilly::load_mesh(cfg.input);
  return reilly::generate(shape_from_config(cfg), cfg.subdiv);
}

ojson config_json(const std::string& command, const RunConfig& cfg) {
  ojson j;
  j["command"] = command;
  if (!cfg.input.empty()) {
    j["input"] = cfg.input;
  } else if (!cfg.family.empty()) {
    j["family"] = cfg.family;
    j["t"] = cfg.t;
    if (cfg.family == "perturbed") {
      j["l"] = cfg.l;
      j["m"] = cfg.m;
    }
  } else {
    j["shape"] = cfg.shape;
    if (cfg.shape == "sphere") j["radius"] = cfg.radius;
    if (cfg.shape == "ellipsoid") j["axes"] = {cfg.a, cfg.b, cfg.c};
    if (cfg.shape == "perturbed") {
      j["l"] = cfg.l;
      j["m"] = cfg.m;
      j["delta"] = cfg.delta;
    }
    if (cfg.shape == "torus") {
      j["major"] = cfg.major;
      j["minor"] = cfg.minor;
    }
  }
  j["subdiv"] = cfg.subdiv;
  j["k"] = cfg.k;
  j["p"] = cfg.p;
  j["tol"] = cfg.tol;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["format"] = cfg.format;
  return j;
}

int cmd_gen(const RunConfig& cfg, std::ostream& log) {
  if (cfg.output.empty()) throw reilly::InvalidArgument("gen needs -o/--output");
  const TriMesh mesh = reilly::generate(shape_from_config(cfg), cfg.subdiv);
  reilly::validate(mesh);
  reilly::save_mesh(mesh, cfg.output);
  log << "vertices " << mesh.num_vertices() << "\n"
      << "faces " << mesh.num_faces() << "\n"
      << "euler_characteristic " << reilly::euler_characteristic(mesh) << "\n";
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const TriMesh mesh = resolve_mesh(cfg);
  reilly::validate(mesh);
  const auto K = reilly::assemble_stiffness(mesh);
  const auto M = reilly::assemble_mass(mesh);
  if (!cfg.matrices.empty()) {
    reilly::write_matrix_market(K, cfg.matrices + "_stiffness.mtx");
    reilly::write_matrix_market(M, cfg.matrices + "_mass.mtx");
  }
  reilly::SolverOptions opt;
  opt.seed = cfg.seed;
  const reilly::Spectrum spectrum = reilly::lowest_spectrum(K, M, cfg.count, opt);

  Sink sink(cfg.output, out);
  std::ostream& os = sink.stream();
  if (cfg.format == "csv") {
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "index,lambda,residual\n";
    for (std::size_t i = 0; i < spectrum.pairs.size(); ++i)
      os << i + 1 << ',' << spectrum.pairs[i].lambda << ',' << spectrum.pairs[i].residual << '\n';
  } else {
    os << reilly::spectrum_json(spectrum) << '\n';
  }
  sink.finish(cfg.output);
  return kExitOk;
}

void write_plot_script(std::ostream& out, const std::string& csv_path) {
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 't'\n"
      << "set logscale y\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output '" << csv_path << ".png'\n"
      << "plot '" << csv_path << "' using 2:(-$4) with linespoints title '-deficit', \\\n"
      << "     '' using 2:5 with linespoints, \\\n"
      << "     '' using 2:6 with linespoints, \\\n"
      << "     '' using 2:7 with linespoints, \\\n"
      << "     '' using 2:8 with linespoints\n";
}

int cmd_pinch(const RunConfig& cfg, std::ostream& out) {
  const reilly::ReportOptions opt = report_options(cfg);
  if (!cfg.plot.empty() && cfg.output.empty()) throw reilly::InvalidArgument("--plot needs -o/--output for the CSV");

  if (!cfg.family.empty()) {
    if (cfg.t.empty()) throw reilly::InvalidArgument("--family needs --t values");
    // Serial sweep: rows come out in the order the values were given.
    std::ostringstream rows;
    reilly::write_sweep_header(rows);
    for (double t : cfg.t) {
      const TriMesh mesh = reilly::generate(family_member(cfg, t), cfg.subdiv);
      const reilly::PinchingReport report = reilly::full_report(mesh, cfg.k, cfg.p, opt);
      reilly::write_sweep_row(rows, cfg.family, t, cfg.subdiv, report);
    }
    Sink sink(cfg.output, out);
    sink.stream() << rows.str();
    sink.finish(cfg.output);
  } else {
    const TriMesh mesh = resolve_mesh(cfg);
    const reilly::PinchingReport report = reilly::full_report(mesh, cfg.k, cfg.p, opt);
    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
      reilly::write_sweep_header(sink.stream());
      reilly::write_sweep_row(sink.stream(), shape_label(cfg), 0.0, cfg.subdiv, report);
    } else {
      reilly::RunMetadata meta{"pinch", cfg.seed, config_json("pinch", cfg)};
      sink.stream() << reilly::to_json(report, meta).dump(2) << '\n';
    }
    sink.finish(cfg.output);
  }

  if (!cfg.plot.empty()) {
    Sink plot(cfg.plot, out);
    write_plot_script(plot.stream(), cfg.output);
    plot.finish(cfg.plot);
  }
  return kExitOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out) {
  if (cfg.start > cfg.subdiv) throw reilly::InvalidArgument("--start must not exceed --subdiv");
  if (!cfg.input.empty()) throw reilly::InvalidArgument("convergence refines a generated shape, not an input mesh");
  const reilly::ShapeSpec shape = shape_from_config(cfg);
  reilly::SolverOptions solver;
  solver.seed = cfg.seed;

  struct Row {
    int subdiv;
    std::size_t vertices;
    double lambda1, hm, identity, deficit;
  };
  std::vector<Row> rows;
  for (int s = cfg.start; s <= cfg.subdiv; ++s) {
    const TriMesh mesh = reilly::normalize(reilly::generate(shape, s)).mesh;
    const auto K = reilly::assemble_stiffness(mesh);
    const auto M = reilly::assemble_mass(mesh);
    const reilly::EigenPair pair = reilly::first_eigenpair(K, M, solver);
    const reilly::SurfaceGeometry geom = reilly::vertex_geometry(mesh);
    const auto terms = reilly::reilly_deficit(mesh, geom, cfg.k, cfg.p, pair.lambda);
    rows.push_back({s, mesh.num_vertices(), pair.lambda, reilly::hsiung_minkowski_residual(mesh, geom, cfg.k),
                    reilly::delta_position_residual(mesh, geom, K, M.diagonal_values()), terms.deficit});
  }

  // Sphere: exact lambda1 = 2 / r^2 = 8 pi at unit area. Otherwise the
  // finest level stands in for the limit and its own error is left blank.
  const bool exact = std::holds_alternative<reilly::Sphere>(shape);
  const double reference = exact ? 8.0 * std::numbers::pi : rows.back().lambda1;

  Sink sink(cfg.output, out);
  std::ostream& os = sink.stream();
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "subdiv,vertices,lambda1,lambda1_error,lambda1_ratio,hm_residual,hm_ratio,identity_residual,identity_ratio,"
        "deficit\n";
  auto ratio = [&](double prev, double cur) {
    if (cur == 0.0) return;
    os << std::abs(prev) / std::abs(cur);
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const bool has_error = exact || i + 1 < rows.size();
    const double err = std::abs(r.lambda1 - reference);
    os << r.subdiv << ',' << r.vertices << ',' << r.lambda1 << ',';
    if (has_error) os << err;
    os << ',';
    if (i > 0 && has_error) ratio(std::abs(rows[i - 1].lambda1 - reference), err);
    os << ',' << r.hm << ',';
    if (i > 0) ratio(rows[i - 1].hm, r.hm);
    os << ',' << r.identity << ',';
    if (i > 0) ratio(rows[i - 1].identity, r.identity);
    os << ',' << r.deficit << '\n';
  }
  sink.finish(cfg.output);
  return kExitOk;
}

int cmd_geometry(const RunConfig& cfg, std::ostream& out) {
  const TriMesh mesh = resolve_mesh(cfg);
  reilly::validate(mesh);
  Sink sink(cfg.output, out);
  reilly::write_geometry_csv(reilly::vertex_geometry(mesh), sink.stream());
  sink.finish(cfg.output);
  return kExitOk;
}

}  // namespace reillylab
