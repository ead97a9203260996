#pragma once

#include "reilly/mesh.hpp"

#include <Eigen/Geometry>

#include <vector>

namespace reilly {

// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

struct ClosestHit {
  double distance = 0.0;
  Vec3 point = Vec3::Zero();
  int face = -1;
};

// Axis-aligned bounding-box hierarchy over the faces of a mesh for exact
// point-to-surface distance queries. Immutable after construction; queries are
// safe to run concurrently.
class TriangleBvh {
 public:
  explicit TriangleBvh(const TriMesh& mesh, int leaf_size = 4);

  ClosestHit closest(const Vec3& p) const;
  double distance(const Vec3& p) const { return closest(p).distance; }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Eigen::AlignedBox3d box;
    int left = -1;   // child index, or -1 for a leaf
    int right = -1;
    int begin = 0;   // range into order_ for leaves
    int end = 0;
  };

  int build(int begin, int end, int leaf_size);

  std::vector<Vec3> a_, b_, c_;
  std::vector<Vec3> centers_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace reilly
