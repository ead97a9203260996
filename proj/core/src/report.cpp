#include "reilly/report.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

#ifndef REILLY_VERSION
#define REILLY_VERSION "0.0.0"
#endif

namespace reilly {

namespace {

using ojson = nlohmann::ordered_json;

ojson vec_json(const Vec3& v) { return ojson::array({v.x(), v.y(), v.z()}); }

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

}  // namespace

std::string library_version() { return REILLY_VERSION; }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

ojson to_json(const LemmaCheck& check, double tol_disc) {
  ojson j;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["scale"] = check.scale;
  j["status"] = to_string(check.status);
  j["pass"] = check.pass();
  if (check.status == CheckStatus::kPass || check.status == CheckStatus::kFail) {
    j["margin"] = check.margin(tol_disc);
    j["excess"] = check.excess();
  } else {
    j["note"] = check.note;
  }
  return j;
}

ojson to_json(const EinsteinReport& e) {
  ojson j;
  j["almost_einstein"] = e.almost_einstein;
  j["k_star"] = e.k_star;
  j["eps"] = e.eps;
  if (!e.almost_einstein) return j;
  j["eps_rel"] = e.eps_rel;
  j["target_radius"] = e.target_radius;
  j["hausdorff"] = e.distance.hausdorff;
  j["annulus"] = e.distance.annulus;
  j["density"] = e.distance.density;
  j["lichnerowicz_lower"] = e.lower;
  j["scalar_upper"] = e.upper;
  j["lower_holds"] = e.lower_holds;
  j["upper_holds"] = e.upper_holds;
  return j;
}

ojson to_json(const PinchingReport& r) {
  ojson j;
  j["name"] = r.name;
  j["n"] = kSurfaceDim;
  j["k"] = r.k;
  j["p"] = r.p;
  j["vertices"] = r.vertices;
  j["faces"] = r.faces;
  j["normalization"] = {{"scale", r.normalization_scale}, {"shift", vec_json(r.normalization_shift)}};
  j["lambda1"] = r.lambda1;
  j["lambda1_residual"] = r.lambda1_residual;
  j["intHkm1"] = r.int_hkm1;
  j["normHk2p"] = r.norm_hk_2p;
  j["deficit"] = r.deficit;
  j["hk_positive"] = r.hk_positive;
  j["p_below_two"] = r.p_below_two;
  j["remark"] = r.remark;
  j["rayleigh_bound"] = r.rayleigh_bound;
  j["norm_x_sq"] = r.norm_x_sq;
  j["hsiung_minkowski_residual"] = r.hsiung_minkowski;
  j["identity_residual"] = r.identity_residual;
  j["sphere_model"] = {{"center", vec_json(r.model.center)}, {"radius", r.model.radius}};
  j["annulus_eps_star"] = r.annulus_eps_star;
  j["density_eps_star"] = r.density_eps_star;
  j["hausdorff"] = r.hausdorff;
  j["distortion_theta_star"] = optional_json(r.distortion_theta_star);
  j["y_l2sq"] = r.y_l2sq;
  j["z_l2sq"] = optional_json(r.z_l2sq);
  j["phi_sup"] = r.phi_sup;
  j["phi_l2"] = r.phi_l2;
  j["tol_disc"] = r.tol_disc;
  ojson checks = ojson::object();
  for (const LemmaCheck& c : r.lemma_checks) checks[c.id] = to_json(c, r.tol_disc);
  j["lemma_checks"] = checks;
  j["grosjean"] = {{"scal_positive", r.grosjean.scal_positive == Hypothesis::kSatisfied},
                   {"bound", r.grosjean.bound},
                   {"pass", r.grosjean.pass}};
  j["einstein"] = r.einstein ? to_json(*r.einstein) : ojson(nullptr);
  return j;
}

ojson to_json(const PinchingReport& report, const RunMetadata& meta) {
  ojson j;
  j["version"] = library_version();
  j["command"] = meta.command;
  j["seed"] = meta.seed;
  j["config_hash"] = hex64(fnv1a64(meta.config.dump()));
  j["config"] = meta.config;
  j["report"] = to_json(report);
  return j;
}

void write_sweep_header(std::ostream& out) {
  out << "shape,t,subdiv,deficit,eps_annulus,eps_density,hausdorff,theta_star,lambda1\n";
}

void write_sweep_row(std::ostream& out, const std::string& shape, double t, int subdiv, const PinchingReport& r) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << shape << ',' << t << ',' << subdiv << ',' << r.deficit << ',' << r.annulus_eps_star << ','
      << r.density_eps_star << ',' << r.hausdorff << ',';
  if (r.distortion_theta_star) out << *r.distortion_theta_star;
  out << ',' << r.lambda1 << '\n';
  out.precision(old_precision);
}

}  // namespace reilly
