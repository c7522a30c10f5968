#pragma once

#include <vector>

#include <Eigen/Dense>

namespace lkq {

// area of the convex hull of planar points
double hull_area_2d(const std::vector<Eigen::Vector2d>& pts);
// volume of the convex hull of points in R^3, by incremental construction; 0 when flat
double hull_volume_3d(const std::vector<Eigen::Vector3d>& pts);

}  // namespace lkq
