#include "reilly/mesh.hpp"

#include "reilly/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace reilly {

namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::uint64_t undirected_key(int a, int b) { return a < b ? directed_key(a, b) : directed_key(b, a); }

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string edge_str(int a, int b) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ")";
  return os.str();
}

}  // namespace

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

void validate(const TriMesh& mesh) {
  const int nv = static_cast<int>(mesh.positions.size());
  if (mesh.faces.empty()) throw ValidationError("closed", "mesh has no faces");

  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    for (int idx : t) {
      if (idx < 0 || idx >= nv) {
        throw ValidationError("indices", "face " + std::to_string(f) + " references vertex " +
                                             std::to_string(idx) + " out of range [0, " +
                                             std::to_string(nv) + ")");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw ValidationError("indices", "face " + std::to_string(f) + " repeats a vertex");
    }
  }

  std::unordered_map<std::uint64_t, int> undirected;
  std::unordered_map<std::uint64_t, int> directed;
  undirected.reserve(mesh.faces.size() * 3);
  directed.reserve(mesh.faces.size() * 3);
  for (const Face& t : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      ++undirected[undirected_key(a, b)];
      ++directed[directed_key(a, b)];
    }
  }
  for (const auto& [key, count] : undirected) {
    if (count != 2) {
      const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
      throw ValidationError("closed", "edge " + edge_str(a, b) + " is shared by " +
                                          std::to_string(count) + " faces (expected 2)");
    }
  }
  for (const auto& [key, count] : directed) {
    if (count != 1) {
      const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
      throw ValidationError("oriented", "directed edge " + edge_str(a, b) + " appears " +
                                            std::to_string(count) +
                                            " times; adjacent faces have inconsistent orientation");
    }
  }

  std::vector<char> used(nv, 0);
  DisjointSets sets(nv);
  for (const Face& t : mesh.faces) {
    for (int idx : t) used[idx] = 1;
    sets.unite(t[0], t[1]);
    sets.unite(t[1], t[2]);
  }
  for (int v = 0; v < nv; ++v) {
    if (!used[v]) throw ValidationError("connected", "vertex " + std::to_string(v) + " is not used by any face");
  }
  const int root = sets.find(mesh.faces.front()[0]);
  for (int v = 0; v < nv; ++v) {
    if (sets.find(v) != root) {
      throw ValidationError("connected", "mesh has more than one connected component (vertex " +
                                             std::to_string(v) + ")");
    }
  }

  double sum = 0.0;
  std::vector<double> areas(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    areas[f] = triangle_area(mesh.positions[t[0]], mesh.positions[t[1]], mesh.positions[t[2]]);
    sum += areas[f];
  }
  const double threshold = 1e-12 * sum / static_cast<double>(mesh.faces.size());
  for (std::size_t f = 0; f < areas.size(); ++f) {
    if (!(areas[f] > threshold)) {
      throw ValidationError("nondegenerate", "face " + std::to_string(f) + " has area " +
                                                 std::to_string(areas[f]) + " below 1e-12 x mean area");
    }
  }
}

int euler_characteristic(const TriMesh& mesh) {
  std::unordered_map<std::uint64_t, int> edges;
  for (const Face& t : mesh.faces) {
    for (int e = 0; e < 3; ++e) edges[undirected_key(t[e], t[(e + 1) % 3])] = 1;
  }
  return static_cast<int>(mesh.positions.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(mesh.faces.size());
}

double signed_volume(const TriMesh& mesh) {
  double vol = 0.0;
  for (const Face& t : mesh.faces) {
    const Vec3& a = mesh.positions[t[0]];
    const Vec3& b = mesh.positions[t[1]];
    const Vec3& c = mesh.positions[t[2]];
    vol += a.dot(b.cross(c));
  }
  return vol / 6.0;
}

double total_area(const TriMesh& mesh) {
  double sum = 0.0;
  for (const Face& t : mesh.faces) {
    sum += triangle_area(mesh.positions[t[0]], mesh.positions[t[1]], mesh.positions[t[2]]);
  }
  return sum;
}

Vec3 surface_centroid(const TriMesh& mesh) {
  Vec3 acc = Vec3::Zero();
  double area = 0.0;
  for (const Face& t : mesh.faces) {
    const Vec3& a = mesh.positions[t[0]];
    const Vec3& b = mesh.positions[t[1]];
    const Vec3& c = mesh.positions[t[2]];
    const double w = triangle_area(a, b, c);
    acc += w * (a + b + c) / 3.0;
    area += w;
  }
  return acc / area;
}

std::vector<double> vertex_areas(const TriMesh& mesh, AreaScheme scheme) {
  std::vector<double> w(mesh.positions.size(), 0.0);
  for (const Face& t : mesh.faces) {
    const Vec3& p0 = mesh.positions[t[0]];
    const Vec3& p1 = mesh.positions[t[1]];
    const Vec3& p2 = mesh.positions[t[2]];
    const double area = triangle_area(p0, p1, p2);
    if (scheme == AreaScheme::kBarycentric) {
      for (int idx : t) w[idx] += area / 3.0;
      continue;
    }
    const std::array<const Vec3*, 3> p{&p0, &p1, &p2};
    // cot of the interior angle at each corner
    std::array<double, 3> cot{};
    int obtuse = -1;
    for (int c = 0; c < 3; ++c) {
      const Vec3 u = *p[(c + 1) % 3] - *p[c];
      const Vec3 v = *p[(c + 2) % 3] - *p[c];
      const double d = u.dot(v);
      cot[c] = d / u.cross(v).norm();
      if (d < 0.0) obtuse = c;
    }
    if (obtuse >= 0) {
      for (int c = 0; c < 3; ++c) w[t[c]] += (c == obtuse) ? area / 2.0 : area / 4.0;
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      const int next = (c + 1) % 3, prev = (c + 2) % 3;
      // edge c-next is opposite corner prev, edge c-prev is opposite corner next
      const double e_next = (*p[next] - *p[c]).squaredNorm();
      const double e_prev = (*p[prev] - *p[c]).squaredNorm();
      w[t[c]] += (e_next * cot[prev] + e_prev * cot[next]) / 8.0;
    }
  }
  return w;
}

MeshMeasure measure(const TriMesh& mesh, AreaScheme scheme) {
  MeshMeasure m;
  m.total_area = total_area(mesh);
  m.vertex_weights = vertex_areas(mesh, scheme);
  m.centroid = surface_centroid(mesh);
  return m;
}

TriMesh translated(TriMesh mesh, const Vec3& t) {
  for (Vec3& p : mesh.positions) p += t;
  return mesh;
}

TriMesh scaled(TriMesh mesh, double c) {
  for (Vec3& p : mesh.positions) p *= c;
  return mesh;
}

Normalized normalize(const TriMesh& mesh) {
  Normalized out;
  out.shift = -surface_centroid(mesh);
  out.scale = 1.0 / std::sqrt(total_area(mesh));
  out.mesh = mesh;
  for (Vec3& p : out.mesh.positions) p = out.scale * (p + out.shift);
  return out;
}

bool is_centered(const TriMesh& mesh, double tol) {
  return surface_centroid(mesh).norm() <= tol * std::sqrt(total_area(mesh));
}

}  // namespace reilly
