#pragma once

#include "reilly/pinching.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace reilly {

std::string library_version();

// Stable 64-bit FNV-1a, used to fingerprint run configurations.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

struct RunMetadata {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
};

// Fixed key order; embeds version, seed and the hash of `meta.config`.
nlohmann::ordered_json to_json(const PinchingReport& report, const RunMetadata& meta);
nlohmann::ordered_json to_json(const PinchingReport& report);
nlohmann::ordered_json to_json(const LemmaCheck& check, double tol_disc);
nlohmann::ordered_json to_json(const EinsteinReport& einstein);

// Family sweep CSV: shape,t,subdiv,deficit,eps_annulus,eps_density,hausdorff,theta_star,lambda1
void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const std::string& shape, double t, int subdiv, const PinchingReport& report);

}  // namespace reilly
