#include "lkq/hull.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#define BOOST_ALLOW_DEPRECATED_HEADERS
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_point.hpp>

namespace lkq {

double hull_area_2d(const std::vector<Eigen::Vector2d>& pts) {
  namespace bg = boost::geometry;
  using P = bg::model::d2::point_xy<double>;
  bg::model::multi_point<P> mp;
  for (const auto& p : pts) mp.emplace_back(p.x(), p.y());
  bg::model::polygon<P> hull;
  bg::convex_hull(mp, hull);
  return std::abs(bg::area(hull));
}

namespace {

struct Tri {
  int v[3];
  Eigen::Vector3d n;
  double off;
  bool alive;
};

}  // namespace

double hull_volume_3d(const std::vector<Eigen::Vector3d>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) return 0;
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * std::max(scale, 1.0);

  // initial tetrahedron from extreme points
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].x() < pts[i0].x()) i0 = i;
  int i1 = i0;
  for (int i = 0; i < n; ++i)
    if ((pts[i] - pts[i0]).squaredNorm() > (pts[i1] - pts[i0]).squaredNorm()) i1 = i;
  const Eigen::Vector3d e = (pts[i1] - pts[i0]).normalized();
  int i2 = i0;
  double best = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d q = pts[i] - pts[i0];
    double dist = (q - q.dot(e) * e).norm();
    if (dist > best) best = dist, i2 = i;
  }
  if (best < eps) return 0;
  Eigen::Vector3d nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = i0;
  best = 0;
  for (int i = 0; i < n; ++i) {
    double dist = std::abs(nrm.dot(pts[i] - pts[i0]));
    if (dist > best) best = dist, i3 = i;
  }
  if (best < eps) return 0;

  const Eigen::Vector3d c = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<Tri> tris;
  auto add = [&](int a, int b, int d) {
    Tri t{{a, b, d}, (pts[b] - pts[a]).cross(pts[d] - pts[a]), 0, true};
    t.n.normalize();
    t.off = t.n.dot(pts[a]);
    if (t.n.dot(c) - t.off > 0) {
      std::swap(t.v[1], t.v[2]);
      t.n = -t.n;
      t.off = -t.off;
    }
    tris.push_back(t);
  };
  add(i0, i1, i2);
  add(i0, i1, i3);
  add(i0, i2, i3);
  add(i1, i2, i3);

  std::vector<int> visible;
  int dead = 0;
  std::unordered_set<long long> edges;
  for (int i = 0; i < n; ++i) {
    const auto& p = pts[i];
    visible.clear();
    for (int f = 0; f < static_cast<int>(tris.size()); ++f)
      if (tris[f].alive && tris[f].n.dot(p) - tris[f].off > eps) visible.push_back(f);
    if (visible.empty()) continue;
    edges.clear();
    for (int f : visible)
      for (int k = 0; k < 3; ++k) edges.insert(static_cast<long long>(tris[f].v[k]) * n + tris[f].v[(k + 1) % 3]);
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      for (int k = 0; k < 3; ++k) {
        int a = tris[f].v[k], b = tris[f].v[(k + 1) % 3];
        if (!edges.count(static_cast<long long>(b) * n + a)) horizon.emplace_back(a, b);
      }
      tris[f].alive = false;
    }
    dead += static_cast<int>(visible.size());
    for (auto [a, b] : horizon) add(a, b, i);
    if (2 * dead > static_cast<int>(tris.size())) {
      tris.erase(std::remove_if(tris.begin(), tris.end(), [](const Tri& t) { return !t.alive; }), tris.end());
      dead = 0;
    }
  }

  double vol = 0;
  for (const auto& t : tris)
    if (t.alive) vol += std::abs((pts[t.v[0]] - c).dot((pts[t.v[1]] - c).cross(pts[t.v[2]] - c))) / 6.0;
  return vol;
}

}  // namespace lkq
