#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lkq/polytope.hpp"

namespace lkq {

// A(y) = lead (y - alpha0)(y - alpha1)(y - alpha_inf), or quadratic when alpha_inf is absent
struct CubePolynomial {
  double lead = 0;
  double alpha0 = 0, alpha1 = 0;
  std::optional<double> alpha_inf;
  Eigen::Vector4d coeffs = Eigen::Vector4d::Zero();  // c0 + c1 y + c2 y^2 + c3 y^3

  // throws DegenerateRoots on close roots or a sign problem on (alpha0, alpha1)
  static CubePolynomial make(double lead, double alpha0, double alpha1, std::optional<double> alpha_inf);

  double operator()(double y) const { return coeffs[0] + y * (coeffs[1] + y * (coeffs[2] + y * coeffs[3])); }
  double d1(double y) const { return coeffs[1] + y * (2 * coeffs[2] + 3 * y * coeffs[3]); }
  double d2(double y) const { return 2 * coeffs[2] + 6 * y * coeffs[3]; }
  int degree() const { return alpha_inf ? 3 : 2; }
  std::vector<double> roots() const;
  // antiderivative of 1/A by partial fractions (up to a constant)
  double inverse_integral(double y) const;
};

struct CubeAnsatz {
  int m = 0;
  Eigen::VectorXd b;  // b_0..b_m
  std::vector<CubePolynomial> A;

  CubeAnsatz(Eigen::VectorXd b, std::vector<CubePolynomial> A);

  double mu0_at_xi(const Eigen::VectorXd& xi) const;  // 1 / (b0 + sum b_i xi_i)
  Eigen::VectorXd mu_from_xi(const Eigen::VectorXd& xi) const;
  Eigen::VectorXd xi_from_mu(const Eigen::VectorXd& mu) const;  // CharacteristicHyperplane if mu0 <= 0
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& xi) const;    // d mu / d xi
  Eigen::VectorXd box_lo() const;
  Eigen::VectorXd box_hi() const;
};

// labels L_ir = 2 (mu_i - alpha_ir mu_0) / A_i'(alpha_ir), grouped in pairs (i0, i1)
LabelledPolytope labels_from_cube(const CubeAnsatz& C);
// the third label of each pencil, equal to -(L_i0 + L_i1)
AffineFunction cube_infinity_label(const CubeAnsatz& C, int i);

// theta_i = dt_i - b_i sum_j mu_j dt_j; rows are the coefficients of theta_i
Eigen::MatrixXd angular_frame(const CubeAnsatz& C, const Eigen::VectorXd& mu);

struct CubeMetric {
  Eigen::MatrixXd dxi;    // mu0 diag(1/A_i)
  Eigen::MatrixXd theta;  // mu0 diag(A_i)
};
CubeMetric metric_at_xi(const CubeAnsatz& C, const Eigen::VectorXd& xi);
// torus-part metric in the dt basis assembled from the theta block
Eigen::MatrixXd torus_metric(const CubeAnsatz& C, const Eigen::VectorXd& xi);

double ricci_potential(const CubeAnsatz& C, const Eigen::VectorXd& xi);
double scalar_closed_form(const CubeAnsatz& C, const Eigen::VectorXd& xi);
double wp_scalar_closed_form(const CubeAnsatz& C, const Eigen::VectorXd& xi);
// sum_i int^{xi_i} ds / A_i(s)
double cube_kahler_integral(const CubeAnsatz& C, const Eigen::VectorXd& xi);

// w = mu_0 as an affine function of mu
AffineFunction cube_weight(const CubeAnsatz& C);

}  // namespace lkq
