#pragma once

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace reilly {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

// Oriented closed triangulated surface in R^3. Faces are counterclockwise when
// seen from outside.
struct TriMesh {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::string name;

  std::size_t num_vertices() const { return positions.size(); }
  std::size_t num_faces() const { return faces.size(); }
};

// Throws ValidationError naming the first violated invariant: indices, closed,
// oriented, connected, nondegenerate.
void validate(const TriMesh& mesh);

int euler_characteristic(const TriMesh& mesh);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

// Signed volume enclosed by the surface; positive for outward orientation.
double signed_volume(const TriMesh& mesh);

enum class AreaScheme { kMixedVoronoi, kBarycentric };

struct MeshMeasure {
  double total_area = 0.0;
  std::vector<double> vertex_weights;
  Vec3 centroid = Vec3::Zero();
};

MeshMeasure measure(const TriMesh& mesh, AreaScheme scheme = AreaScheme::kMixedVoronoi);

// Mixed-Voronoi (or barycentric) per-vertex area.
std::vector<double> vertex_areas(const TriMesh& mesh, AreaScheme scheme = AreaScheme::kMixedVoronoi);

double total_area(const TriMesh& mesh);

// Area-weighted centroid of the surface (not of the enclosed solid).
Vec3 surface_centroid(const TriMesh& mesh);

TriMesh translated(TriMesh mesh, const Vec3& t);
TriMesh scaled(TriMesh mesh, double c);

struct Normalized {
  TriMesh mesh;
  double scale = 1.0;  // applied after the shift
  Vec3 shift = Vec3::Zero();
};

// Moves the centroid to the origin and rescales to unit area:
// x' = scale * (x + shift).
Normalized normalize(const TriMesh& mesh);

// True when the centroid sits at the origin within tol * sqrt(area).
bool is_centered(const TriMesh& mesh, double tol = 1e-9);

enum class MeshFormat { kOff, kObj };

MeshFormat format_from_path(const std::filesystem::path& path);

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriMesh load_mesh(const std::filesystem::path& path);

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format);
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path);

}  // namespace reilly
