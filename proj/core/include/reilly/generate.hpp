#pragma once

#include "reilly/mesh.hpp"

#include <string>
#include <variant>

namespace reilly {

struct Sphere {
  double radius = 1.0;
};

struct Ellipsoid {
  double a = 1.0, b = 1.0, c = 1.0;
};

// Radial bump r(u) = 1 + amplitude * Y_l^m(u), Y_l^m the real orthonormal
// spherical harmonic (cos(m phi) branch).
struct PerturbedSphere {
  int l = 2;
  int m = 0;
  double amplitude = 0.0;
};

struct Torus {
  double major = 2.0;
  double minor = 0.5;
};

using ShapeSpec = std::variant<Sphere, Ellipsoid, PerturbedSphere, Torus>;

std::string shape_name(const ShapeSpec& shape);

// Icosahedron with a vertex on each pole (+-z), unit circumradius.
TriMesh icosahedron();

// One 1-to-4 midpoint split; new vertices are not projected.
TriMesh subdivide(const TriMesh& mesh);

// One step of Loop subdivision on a closed mesh: connectivity and vertex
// numbering of subdivide(), positions from Loop's edge and vertex masks.
TriMesh loop_subdivide(const TriMesh& mesh);

double real_spherical_harmonic(int l, int m, const Vec3& unit_dir);

// max |Y_l^m| over the sphere (attained on the polar/azimuthal grid used here).
double spherical_harmonic_sup(int l, int m);

// Sphere, Ellipsoid and PerturbedSphere: icosahedron Loop-subdivided `subdiv`
// times, then vertices mapped radially to the unit sphere and on to the
// target surface. Torus: structured grid of
// 16*2^subdiv by 8*2^subdiv quads split into triangles.
TriMesh generate(const ShapeSpec& shape, int subdiv);

}  // namespace reilly
