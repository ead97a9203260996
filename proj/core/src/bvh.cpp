#include "reilly/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace reilly {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Voronoi-region walk over vertices, edges and the face interior.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

TriangleBvh::TriangleBvh(const TriMesh& mesh, int leaf_size) {
  const std::size_t nf = mesh.faces.size();
  a_.reserve(nf);
  b_.reserve(nf);
  c_.reserve(nf);
  centers_.reserve(nf);
  for (const Face& f : mesh.faces) {
    a_.push_back(mesh.positions[f[0]]);
    b_.push_back(mesh.positions[f[1]]);
    c_.push_back(mesh.positions[f[2]]);
    centers_.push_back((a_.back() + b_.back() + c_.back()) / 3.0);
  }
  order_.resize(nf);
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * nf / std::max(1, leaf_size) + 1);
  if (nf > 0) build(0, static_cast<int>(nf), std::max(1, leaf_size));
}

int TriangleBvh::build(int begin, int end, int leaf_size) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Eigen::AlignedBox3d box;
  Eigen::AlignedBox3d center_box;
  for (int i = begin; i < end; ++i) {
    const int f = order_[i];
    box.extend(a_[f]).extend(b_[f]).extend(c_[f]);
    center_box.extend(centers_[f]);
  }
  nodes_[index].box = box;
  if (end - begin <= leaf_size) {
    nodes_[index].begin = begin;
    nodes_[index].end = end;
    return index;
  }
  int axis = 0;
  center_box.sizes().maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int x, int y) { return centers_[x][axis] < centers_[y][axis]; });
  const int left = build(begin, mid, leaf_size);
  const int right = build(mid, end, leaf_size);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

ClosestHit TriangleBvh::closest(const Vec3& p) const {
  ClosestHit best;
  best.distance = std::numeric_limits<double>::infinity();
  if (nodes_.empty()) return best;
  double best_sq = std::numeric_limits<double>::infinity();

  std::vector<std::pair<double, int>> stack;
  stack.reserve(64);
  stack.emplace_back(nodes_[0].box.squaredExteriorDistance(p), 0);
  while (!stack.empty()) {
    const auto [box_sq, idx] = stack.back();
    stack.pop_back();
    if (box_sq >= best_sq) continue;
    const Node& node = nodes_[idx];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int f = order_[i];
        const Vec3 q = closest_point_on_triangle(p, a_[f], b_[f], c_[f]);
        const double d = (q - p).squaredNorm();
        if (d < best_sq) {
          best_sq = d;
          best.point = q;
          best.face = f;
        }
      }
      continue;
    }
    const double dl = nodes_[node.left].box.squaredExteriorDistance(p);
    const double dr = nodes_[node.right].box.squaredExteriorDistance(p);
    // push the farther child first so the nearer one is explored next
    if (dl < dr) {
      stack.emplace_back(dr, node.right);
      stack.emplace_back(dl, node.left);
    } else {
      stack.emplace_back(dl, node.left);
      stack.emplace_back(dr, node.right);
    }
  }
  best.distance = std::sqrt(best_sq);
  return best;
}

}  // namespace reilly
