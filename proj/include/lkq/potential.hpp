#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lkq/polytope.hpp"

namespace lkq {

struct PotentialTerm {
  AffineFunction L;
  double c = 0.5;
};

// G = sum_k c_k L_k log|L_k| on the interior of a labelled polytope.
class SymplecticPotential {
 public:
  SymplecticPotential(std::vector<PotentialTerm> terms, LabelledPolytope domain);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  const LabelledPolytope& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  double boundary_margin() const { return margin_; }

  // throws BoundaryProximity when a facet label is within the margin
  void require_interior(const Eigen::VectorXd& mu) const;

  double eval(const Eigen::VectorXd& mu) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& mu) const;
  Eigen::MatrixXd hess(const Eigen::VectorXd& mu) const;
  // H = hess^{-1}; throws IllConditioned above condition number 1e12
  Eigen::MatrixXd metric_H(const Eigen::VectorXd& mu) const;

 private:
  std::vector<PotentialTerm> terms_;
  LabelledPolytope domain_;
  double margin_;
};

// L_{i,inf} = -sum_r L_ir for each factor
AffineFunction infinity_label(const LabelledPolytope& P, const std::vector<int>& factor);

SymplecticPotential levi_kahler_potential(const LabelledPolytope& P, const Grouping& g);
SymplecticPotential guillemin_potential(const LabelledPolytope& P);

// Legendre transform based at p: K(mu) = <mu - p, grad G(mu)> - G(mu),
// in closed form sum_k c_k (L_k(mu) - L_k(p) - L_k(p) log|L_k(mu)|).
class KahlerPotential {
 public:
  KahlerPotential(SymplecticPotential G, Eigen::VectorXd p);
  double operator()(const Eigen::VectorXd& mu) const;
  const Eigen::VectorXd& basepoint() const { return p_; }

 private:
  SymplecticPotential G_;
  Eigen::VectorXd p_;
};

KahlerPotential kahler_potential(const LabelledPolytope& P, const Grouping& g,
                                 std::optional<Eigen::VectorXd> p = std::nullopt);

struct FacetBoundaryResult {
  int facet = 0;
  double normal_residual = 0;      // extrapolated |H u_s| / |u_s| at the facet
  double derivative_residual = 0;  // extrapolated |u_s^T (d_u H) u_s - 2|u_s|^2| / |u_s|^2
  bool pass = false;
};

struct BoundaryReport {
  std::vector<FacetBoundaryResult> facets;
  bool positive_definite = false;
  double min_eigenvalue = 0;
  bool pass = false;
};

BoundaryReport abreu_boundary_check(const SymplecticPotential& G, double tol = 1e-6);

}  // namespace lkq
