#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lkq/potential.hpp"

namespace lkq {

// S = -sum_ij d_i d_j H_ij, from closed-form derivatives of H = (Hess G)^{-1}
double abreu_scalar(const SymplecticPotential& G, const Eigen::VectorXd& mu);
// same quantity by central differences of H with one Richardson step;
// the step is rel_step times the distance to the nearest facet
double abreu_scalar_fd(const SymplecticPotential& G, const Eigen::VectorXd& mu, double rel_step = 1e-2);

// toric Laplacian of the affine function with linear part a: -sum_ij d_i H_ij a_j
double laplacian_affine(const SymplecticPotential& G, const Eigen::VectorXd& mu, const Eigen::VectorXd& a);
double laplacian_affine_fd(const SymplecticPotential& G, const Eigen::VectorXd& mu, const Eigen::VectorXd& a,
                           double rel_step = 1e-2);

struct CurvatureSample {
  Eigen::VectorXd mu;
  double s = 0;
  double s_wp = 0;
  double w_value = 1;
  double p = 0;
};

// w^2 s - 2(p-1) w Lap(w) - p(p-1) <a, H a>
CurvatureSample curvature_sample(const SymplecticPotential& G, const Eigen::VectorXd& mu, const AffineFunction& w,
                                 double p);
double wp_scalar(const SymplecticPotential& G, const Eigen::VectorXd& mu, const AffineFunction& w, double p);

struct AffineFit {
  AffineFunction f;
  double max_residual = 0;  // relative to the value range (absolute when the range is tiny)
  double range = 0;
};
AffineFit affine_fit(const std::vector<Eigen::VectorXd>& points, const std::vector<double>& values);

struct QuadratureNode {
  Eigen::VectorXd mu;
  double weight;
};
// centroid rule on a uniform subdivision of a triangulation, about n nodes in total
std::vector<QuadratureNode> quadrature_nodes(const LabelledPolytope& P, int n);

// integral of (s_wp - weighted mean) h w^{-(p+1)}; the (2 pi)^m factor is left out
double futaki(const SymplecticPotential& G, const AffineFunction& w, double p, const AffineFunction& h, int n_quad,
              int threads = 1);

// points of a tensor grid over the bounding box that lie in the polytope with a
// relative margin; k points per axis
std::vector<Eigen::VectorXd> interior_grid(const LabelledPolytope& P, int k, double margin = 0.02);

}  // namespace lkq
