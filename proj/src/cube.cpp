#include "lkq/cube.hpp"

#include <cmath>
#include <string>

#include "lkq/error.hpp"

namespace lkq {

CubePolynomial CubePolynomial::make(double lead, double alpha0, double alpha1, std::optional<double> alpha_inf) {
  CubePolynomial p;
  p.lead = lead;
  p.alpha0 = alpha0;
  p.alpha1 = alpha1;
  p.alpha_inf = alpha_inf;
  if (!(alpha0 < alpha1) || alpha1 - alpha0 <= 1e-9) throw Error(ErrorKind::DegenerateRoots, "need alpha0 < alpha1 with a gap");
  if (alpha_inf) {
    double r = *alpha_inf;
    if (std::abs(r - alpha0) <= 1e-9 || std::abs(r - alpha1) <= 1e-9)
      throw Error(ErrorKind::DegenerateRoots, "roots are not distinct");
    if (r > alpha0 && r < alpha1) throw Error(ErrorKind::DegenerateRoots, "third root lies inside the interval");
    // lead (y - a)(y - b)(y - r)
    p.coeffs << -lead * alpha0 * alpha1 * r, lead * (alpha0 * alpha1 + alpha0 * r + alpha1 * r),
        -lead * (alpha0 + alpha1 + r), lead;
  } else {
    p.coeffs << lead * alpha0 * alpha1, -lead * (alpha0 + alpha1), lead, 0.0;
  }
  double mid = p(0.5 * (alpha0 + alpha1));
  if (!(mid > 0)) throw Error(ErrorKind::DegenerateRoots, "polynomial is not positive between its first two roots");
  double scale = p.coeffs.cwiseAbs().maxCoeff() * std::max(1.0, std::pow(std::max(std::abs(alpha0), std::abs(alpha1)), 3));
  for (double r : p.roots())
    if (std::abs(p(r)) > 1e-10 * scale) throw Error(ErrorKind::DegenerateRoots, "roots do not match coefficients");
  return p;
}

std::vector<double> CubePolynomial::roots() const {
  std::vector<double> r{alpha0, alpha1};
  if (alpha_inf) r.push_back(*alpha_inf);
  return r;
}

double CubePolynomial::inverse_integral(double y) const {
  double v = 0;
  for (double r : roots()) v += std::log(std::abs(y - r)) / d1(r);
  return v;
}

CubeAnsatz::CubeAnsatz(Eigen::VectorXd b_, std::vector<CubePolynomial> A_) : b(std::move(b_)), A(std::move(A_)) {
  m = static_cast<int>(A.size());
  if (b.size() != m + 1) throw Error(ErrorKind::Input, "b must have m+1 entries");
  if (b[0] == 0) throw Error(ErrorKind::Input, "b_0 must be nonzero for the mu chart");
  // b0 + sum b_i xi_i is affine, so its minimum over the box is at a corner
  double lo = b[0];
  for (int i = 0; i < m; ++i) lo += std::min(b[i + 1] * A[i].alpha0, b[i + 1] * A[i].alpha1);
  if (!(lo > 0)) throw Error(ErrorKind::CharacteristicHyperplane, "b0 + <b, xi> is not positive on the box");
}

double CubeAnsatz::mu0_at_xi(const Eigen::VectorXd& xi) const {
  return 1.0 / (b[0] + b.tail(m).dot(xi));
}

Eigen::VectorXd CubeAnsatz::mu_from_xi(const Eigen::VectorXd& xi) const {
  double mu0 = mu0_at_xi(xi);
  if (!(mu0 > 0)) throw Error(ErrorKind::CharacteristicHyperplane, "mu_0 is not positive");
  return mu0 * xi;
}

Eigen::VectorXd CubeAnsatz::xi_from_mu(const Eigen::VectorXd& mu) const {
  double mu0 = (1.0 - b.tail(m).dot(mu)) / b[0];
  if (!(mu0 > 0)) throw Error(ErrorKind::CharacteristicHyperplane, "mu_0 is not positive");
  return mu / mu0;
}

Eigen::MatrixXd CubeAnsatz::jacobian(const Eigen::VectorXd& xi) const {
  double mu0 = mu0_at_xi(xi);
  // mu_i = mu0 xi_i, d mu0 = -mu0^2 b_j d xi_j
  Eigen::MatrixXd J = mu0 * Eigen::MatrixXd::Identity(m, m);
  J -= mu0 * mu0 * xi * b.tail(m).transpose();
  return J;
}

Eigen::VectorXd CubeAnsatz::box_lo() const {
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = A[i].alpha0;
  return v;
}

Eigen::VectorXd CubeAnsatz::box_hi() const {
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = A[i].alpha1;
  return v;
}

namespace {

// mu_0 as an affine function on the mu chart
AffineFunction mu0_function(const CubeAnsatz& C) {
  return {1.0 / C.b[0], -C.b.tail(C.m) / C.b[0]};
}

AffineFunction label(const CubeAnsatz& C, int i, double alpha, double dA) {
  AffineFunction f = mu0_function(C) * (-alpha);
  f.a[i] += 1.0;
  return f * (2.0 / dA);
}

}  // namespace

AffineFunction cube_weight(const CubeAnsatz& C) { return mu0_function(C); }

LabelledPolytope labels_from_cube(const CubeAnsatz& C) {
  std::vector<AffineFunction> facets;
  Grouping g;
  for (int i = 0; i < C.m; ++i) {
    const auto& A = C.A[i];
    facets.push_back(label(C, i, A.alpha0, A.d1(A.alpha0)));
    facets.push_back(label(C, i, A.alpha1, A.d1(A.alpha1)));
    g.factors.push_back({2 * i, 2 * i + 1});
    AffineFunction sum = facets[2 * i] + facets[2 * i + 1] + cube_infinity_label(C, i);
    double size = facets[2 * i].a.cwiseAbs().maxCoeff() + std::abs(facets[2 * i].a0);
    if (std::abs(sum.a0) + sum.a.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, size))
      throw Error(ErrorKind::DegenerateRoots, "labels of pencil " + std::to_string(i) + " do not sum to zero");
  }
  return LabelledPolytope(C.m, facets, g);
}

AffineFunction cube_infinity_label(const CubeAnsatz& C, int i) {
  const auto& A = C.A[i];
  if (A.alpha_inf) return label(C, i, *A.alpha_inf, A.d1(*A.alpha_inf));
  // limit of a far root: 2 mu_0 / lead
  return mu0_function(C) * (2.0 / A.lead);
}

Eigen::MatrixXd angular_frame(const CubeAnsatz& C, const Eigen::VectorXd& mu) {
  return Eigen::MatrixXd::Identity(C.m, C.m) - C.b.tail(C.m) * mu.transpose();
}

CubeMetric metric_at_xi(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  for (int i = 0; i < C.m; ++i)
    if (!(xi[i] > C.A[i].alpha0 && xi[i] < C.A[i].alpha1))
      throw Error(ErrorKind::BoundaryProximity, "xi is not in the open box");
  double mu0 = C.mu0_at_xi(xi);
  CubeMetric g;
  g.dxi = Eigen::MatrixXd::Zero(C.m, C.m);
  g.theta = Eigen::MatrixXd::Zero(C.m, C.m);
  for (int i = 0; i < C.m; ++i) {
    double a = C.A[i](xi[i]);
    g.dxi(i, i) = mu0 / a;
    g.theta(i, i) = mu0 * a;
  }
  return g;
}

Eigen::MatrixXd torus_metric(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  Eigen::MatrixXd Theta = angular_frame(C, C.mu_from_xi(xi));
  return Theta.transpose() * metric_at_xi(C, xi).theta * Theta;
}

double ricci_potential(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  double v = std::pow(C.mu0_at_xi(xi), C.m + 2);
  for (int i = 0; i < C.m; ++i) v *= C.A[i](xi[i]);
  return v;
}

double scalar_closed_form(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  const int m = C.m;
  double mu0 = C.mu0_at_xi(xi);
  double s = 0;
  for (int i = 0; i < m; ++i) {
    const auto& A = C.A[i];
    double bi = C.b[i + 1];
    s += -A.d2(xi[i]) / mu0 + 2.0 * (m + 1) * bi * A.d1(xi[i]) - (m + 1.0) * (m + 2.0) * mu0 * bi * bi * A(xi[i]);
  }
  return s;
}

double wp_scalar_closed_form(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  double sum = 0;
  for (int i = 0; i < C.m; ++i) sum += C.A[i].d2(xi[i]);
  return -C.mu0_at_xi(xi) * sum;
}

double cube_kahler_integral(const CubeAnsatz& C, const Eigen::VectorXd& xi) {
  double v = 0;
  for (int i = 0; i < C.m; ++i) v += C.A[i].inverse_integral(xi[i]);
  return v;
}

}  // namespace lkq
