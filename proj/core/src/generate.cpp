#include "reilly/generate.hpp"

#include "reilly/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_map>

namespace reilly {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double factorial_ratio(int l, int m) {
  // (l-m)! / (l+m)!
  double r = 1.0;
  for (int i = l - m + 1; i <= l + m; ++i) r /= static_cast<double>(i);
  return r;
}

double harmonic_norm(int l, int m) {
  const double base = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * factorial_ratio(l, m));
  return m == 0 ? base : std::sqrt(2.0) * base;
}

TriMesh unit_sphere(int subdiv) {
  TriMesh mesh = icosahedron();
  for (int s = 0; s < subdiv; ++s) mesh = loop_subdivide(mesh);
  for (Vec3& p : mesh.positions) p.normalize();
  return mesh;
}

TriMesh torus(const Torus& shape, int subdiv) {
  const int nu = 16 << subdiv;
  const int nv = 8 << subdiv;
  TriMesh mesh;
  mesh.positions.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    const double phi = 2.0 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double psi = 2.0 * kPi * j / nv;
      const double ring = shape.major + shape.minor * std::cos(psi);
      mesh.positions.emplace_back(ring * std::cos(phi), ring * std::sin(phi), shape.minor * std::sin(psi));
    }
  }
  auto id = [&](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  }
  return mesh;
}

}  // namespace

std::string shape_name(const ShapeSpec& shape) {
  return std::visit(overloaded{[](const Sphere&) { return std::string("sphere"); },
                               [](const Ellipsoid&) { return std::string("ellipsoid"); },
                               [](const PerturbedSphere&) { return std::string("perturbed"); },
                               [](const Torus&) { return std::string("torus"); }},
                    shape);
}

TriMesh icosahedron() {
  TriMesh mesh;
  const double z = 1.0 / std::sqrt(5.0);
  const double rho = 2.0 / std::sqrt(5.0);
  mesh.positions.emplace_back(0.0, 0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * kPi * i / 5.0;
    mesh.positions.emplace_back(rho * std::cos(a), rho * std::sin(a), z);
  }
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * kPi * i / 5.0 + kPi / 5.0;
    mesh.positions.emplace_back(rho * std::cos(a), rho * std::sin(a), -z);
  }
  mesh.positions.emplace_back(0.0, 0.0, -1.0);

  auto up = [](int i) { return 1 + (i % 5); };
  auto lo = [](int i) { return 6 + (i % 5); };
  for (int i = 0; i < 5; ++i) {
    mesh.faces.push_back({0, up(i), up(i + 1)});
    mesh.faces.push_back({up(i), lo(i), up(i + 1)});
    mesh.faces.push_back({lo(i), lo(i + 1), up(i + 1)});
    mesh.faces.push_back({11, lo(i + 1), lo(i)});
  }
  // convex and centered: outward means the normal agrees with the face centroid
  for (Face& f : mesh.faces) {
    const Vec3& a = mesh.positions[f[0]];
    const Vec3& b = mesh.positions[f[1]];
    const Vec3& c = mesh.positions[f[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(f[1], f[2]);
  }
  mesh.name = "icosahedron";
  return mesh;
}

TriMesh loop_subdivide(const TriMesh& mesh) {
  // Same connectivity and vertex numbering as subdivide(); only positions differ.
  TriMesh out = subdivide(mesh);
  const std::size_t nv = mesh.positions.size();

  std::vector<Vec3> ring_sum(nv, Vec3::Zero());
  std::vector<int> valence(nv, 0);
  // Per directed edge a->b of each face the corner opposite it; every new
  // vertex is the midpoint of exactly one undirected edge.
  std::unordered_map<std::uint64_t, int> opposite;
  opposite.reserve(mesh.faces.size() * 3);
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  };
  for (const Face& f : mesh.faces) {
    for (int c = 0; c < 3; ++c) {
      const int a = f[c], b = f[(c + 1) % 3];
      opposite[key(a, b)] = f[(c + 2) % 3];
      ring_sum[a] += mesh.positions[b];
      ++valence[a];
    }
  }

  // subdivide() emits faces {a, ab, ca}, {b, bc, ab}, {c, ca, bc}, {ab, bc, ca}
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    const Face& inner = out.faces[4 * f + 3];
    for (int c = 0; c < 3; ++c) {
      const int a = t[c], b = t[(c + 1) % 3];
      const int mid = inner[c];
      const int d = opposite.at(key(a, b));
      const int e = opposite.at(key(b, a));
      out.positions[mid] = 0.375 * (mesh.positions[a] + mesh.positions[b]) +
                           0.125 * (mesh.positions[d] + mesh.positions[e]);
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const double n = valence[v];
    const double x = 0.375 + 0.25 * std::cos(2.0 * kPi / n);
    const double beta = (0.625 - x * x) / n;
    out.positions[v] = (1.0 - n * beta) * mesh.positions[v] + beta * ring_sum[v];
  }
  return out;
}

TriMesh subdivide(const TriMesh& mesh) {
  TriMesh out;
  out.name = mesh.name;
  out.positions = mesh.positions;
  out.faces.reserve(mesh.faces.size() * 4);
  std::unordered_map<std::uint64_t, int> midpoints;
  midpoints.reserve(mesh.faces.size() * 2);
  auto midpoint = [&](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    const std::uint64_t key = (lo << 32) | hi;
    auto it = midpoints.find(key);
    if (it != midpoints.end()) return it->second;
    const int idx = static_cast<int>(out.positions.size());
    out.positions.push_back(0.5 * (mesh.positions[a] + mesh.positions[b]));
    midpoints.emplace(key, idx);
    return idx;
  };
  for (const Face& f : mesh.faces) {
    const int ab = midpoint(f[0], f[1]);
    const int bc = midpoint(f[1], f[2]);
    const int ca = midpoint(f[2], f[0]);
    out.faces.push_back({f[0], ab, ca});
    out.faces.push_back({f[1], bc, ab});
    out.faces.push_back({f[2], ca, bc});
    out.faces.push_back({ab, bc, ca});
  }
  return out;
}

double real_spherical_harmonic(int l, int m, const Vec3& u) {
  const double cos_theta = std::clamp(u.z() / u.norm(), -1.0, 1.0);
  const double phi = std::atan2(u.y(), u.x());
  return harmonic_norm(l, m) * std::assoc_legendre(l, m, cos_theta) * std::cos(m * phi);
}

double spherical_harmonic_sup(int l, int m) {
  constexpr int kSamples = 20001;
  double sup = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = -1.0 + 2.0 * i / (kSamples - 1);
    sup = std::max(sup, std::abs(std::assoc_legendre(l, m, x)));
  }
  return harmonic_norm(l, m) * sup;
}

TriMesh generate(const ShapeSpec& shape, int subdiv) {
  if (subdiv < 0 || subdiv > 9) throw InvalidArgument("subdiv must be in [0, 9], got " + std::to_string(subdiv));
  TriMesh mesh = std::visit(
      overloaded{
          [&](const Sphere& s) {
            if (!(s.radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
            TriMesh m = unit_sphere(subdiv);
            for (Vec3& p : m.positions) p *= s.radius;
            return m;
          },
          [&](const Ellipsoid& e) {
            if (!(e.a > 0.0 && e.b > 0.0 && e.c > 0.0)) throw InvalidArgument("ellipsoid semi-axes must be positive");
            TriMesh m = unit_sphere(subdiv);
            for (Vec3& p : m.positions) p = Vec3(e.a * p.x(), e.b * p.y(), e.c * p.z());
            return m;
          },
          [&](const PerturbedSphere& ps) {
            if (ps.l < 0 || ps.m < 0 || ps.m > ps.l) throw InvalidArgument("perturbed sphere needs 0 <= m <= l");
            if (ps.l > 60) throw InvalidArgument("perturbed sphere degree l must be <= 60");
            if (!(std::abs(ps.amplitude) * spherical_harmonic_sup(ps.l, ps.m) < 1.0)) {
              throw InvalidArgument("perturbation amplitude too large: radial function must stay positive");
            }
            TriMesh m = unit_sphere(subdiv);
            for (Vec3& p : m.positions) p *= 1.0 + ps.amplitude * real_spherical_harmonic(ps.l, ps.m, p);
            return m;
          },
          [&](const Torus& t) {
            if (!(t.minor > 0.0 && t.major > t.minor)) throw InvalidArgument("torus needs major > minor > 0");
            return torus(t, subdiv);
          }},
      shape);
  mesh.name = shape_name(shape);
  return mesh;
}

}  // namespace reilly
