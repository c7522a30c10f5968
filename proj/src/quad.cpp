#include "lkq/quad.hpp"

#include <cmath>

#include "lkq/curvature.hpp"
#include "lkq/error.hpp"
#include "lkq/linalg.hpp"
#include "lkq/potential.hpp"

namespace lkq {

QuadData QuadData::from_doubles(double alpha, double gamma, double beta, double delta, double c1, double c2) {
  return {to_rational(alpha), to_rational(gamma), to_rational(beta), to_rational(delta), to_rational(c1), to_rational(c2)};
}

Rational QuadData::Z(const Rational& s1, const Rational& s2) const {
  return 1 + alpha * s1 + delta * s2 + (alpha * delta - beta * gamma) * s1 * s2;
}

double QuadData::Z(double s1, double s2) const {
  double a = to_double(alpha), b = to_double(beta), g = to_double(gamma), d = to_double(delta);
  return 1 + a * s1 + d * s2 + (a * d - b * g) * s1 * s2;
}

QuadData QuadData::swapped() const { return {delta, beta, gamma, alpha, c2, c1}; }

Eigen::Vector2d quad_moment(const QuadData& Q, double s1, double s2) {
  double a = to_double(Q.alpha), b = to_double(Q.beta), g = to_double(Q.gamma), d = to_double(Q.delta);
  double c1 = to_double(Q.c1), c2 = to_double(Q.c2);
  double Z = Q.Z(s1, s2);
  return {(c1 * s1 * (1 + d * s2) - c2 * b * s1 * s2) / Z, (-c1 * g * s1 * s2 + c2 * (1 + a * s1) * s2) / Z};
}

namespace {

std::vector<ExactAffine> quad_labels(const QuadData& Q) {
  return {{0, {1, 0}},
          {Q.c1, {-(1 + Q.alpha), -Q.beta}},
          {0, {0, 1}},
          {Q.c2, {-Q.gamma, -(1 + Q.delta)}}};
}

}  // namespace

QuadSetup quad_setup(const QuadData& Q) {
  if (!(Q.c1 > 0 && Q.c2 > 0)) throw Error(ErrorKind::Input, "c_1 and c_2 must be positive");
  // Z is bilinear, so positivity on the square is decided at the corners
  for (int s1 = 0; s1 <= 1; ++s1)
    for (int s2 = 0; s2 <= 1; ++s2)
      if (!(Q.Z(Rational(s1), Rational(s2)) > 0)) throw Error(ErrorKind::PositivityFailure, "Z is not positive on the unit square");
  Grouping g{{{0, 1}, {2, 3}}};
  LabelledPolytope P(2, quad_labels(Q), g);
  // vertices are the images of the sigma corners
  for (int s1 = 0; s1 <= 1; ++s1)
    for (int s2 = 0; s2 <= 1; ++s2) {
      Eigen::Vector2d mu = quad_moment(Q, s1, s2);
      bool hit = false;
      for (const auto& v : P.vertices()) hit = hit || (v.point - mu).norm() <= 1e-9 * std::max(1.0, mu.norm());
      if (!hit) throw Error(ErrorKind::SelfCheckFailure, "corner image is not a vertex of the quadrilateral");
    }
  return {P, setup_from_labels(2, quad_labels(Q), g)};
}

std::string to_string(AmbitoricTag tag) {
  switch (tag) {
    case AmbitoricTag::Product: return "Product";
    case AmbitoricTag::Calabi: return "Calabi";
    case AmbitoricTag::Orthotoric: return "Orthotoric";
  }
  return "?";
}

AmbitoricClass classify(const QuadData& Q) {
  AmbitoricClass c;
  c.beta_zero = Q.beta == 0;
  c.gamma_zero = Q.gamma == 0;
  c.tag = c.beta_zero && c.gamma_zero ? AmbitoricTag::Product
          : c.beta_zero || c.gamma_zero ? AmbitoricTag::Calabi
                                        : AmbitoricTag::Orthotoric;
  // g = ker u over the facets (10, 11, 20, 21); ab_i = span{e_i0, e_i1}
  auto labels = quad_labels(Q);
  linalg::Mat<Rational> u(2, std::vector<Rational>(4));
  for (int s = 0; s < 4; ++s)
    for (int j = 0; j < 2; ++j) u[j][s] = labels[s].a[j];
  auto g = linalg::nullspace(u, 4);
  auto intersection = [&](int first) {
    // dim(g + ab) via the rank of the stacked spanning sets
    linalg::Mat<Rational> M(g.begin(), g.end());
    for (int s = first; s < first + 2; ++s) {
      std::vector<Rational> e(4, 0);
      e[s] = 1;
      M.push_back(e);
    }
    return static_cast<int>(g.size()) + 2 - linalg::rank(M);
  };
  c.dim_g_ab1 = intersection(0);
  c.dim_g_ab2 = intersection(2);
  int nontrivial = (c.dim_g_ab1 > 0) + (c.dim_g_ab2 > 0);
  int expected = c.tag == AmbitoricTag::Product ? 2 : c.tag == AmbitoricTag::Calabi ? 1 : 0;
  if (nontrivial != expected) throw Error(ErrorKind::SelfCheckFailure, "subspace criterion disagrees with the C-matrix pattern");
  return c;
}

double SegreData::xi1(double sigma1) const { return sigma1 / (c2 - to_double(k1) * sigma1); }
double SegreData::xi2(double sigma2) const { return sigma2 / (c1 - to_double(k2) * sigma2); }

namespace {

// c1 c2 xi (1 + k xi)(1 + (k - c) xi) on [0, 1/(c - k)]
CubePolynomial segre_polynomial(double c1c2, double k, double c) {
  if (!(c - k > 0)) throw Error(ErrorKind::DegenerateRoots, "Segre interval is empty");
  double right = 1.0 / (c - k);
  if (k == 0) return CubePolynomial::make(-c1c2 * c, 0.0, right, std::nullopt);
  return CubePolynomial::make(c1c2 * k * (k - c), 0.0, right, -1.0 / k);
}

}  // namespace

SegreData segre_coordinates(const QuadData& Q) {
  quad_setup(Q);
  const double c1 = to_double(Q.c1), c2 = to_double(Q.c2);
  Rational k1 = Q.c1 * Q.gamma - Q.c2 * Q.alpha;
  Rational k2 = Q.c2 * Q.beta - Q.c1 * Q.delta;
  Eigen::Vector3d b(1.0, to_double(Q.c1 * Q.gamma), to_double(Q.c2 * Q.beta));
  std::vector<CubePolynomial> A{segre_polynomial(c1 * c2, to_double(k1), c2), segre_polynomial(c1 * c2, to_double(k2), c1)};
  SegreData S{k1, k2, CubeAnsatz(b, A), 0, 0};
  S.c1 = c1;
  S.c2 = c2;
  // 1 + c1 gamma xi1 + c2 beta xi2 = c1 c2 Delta1 Delta2 Z
  for (double s1 : {0.13, 0.5, 0.91})
    for (double s2 : {0.07, 0.44, 0.83}) {
      double x1 = S.xi1(s1), x2 = S.xi2(s2);
      double d1 = x1 / s1, d2 = x2 / s2;
      double lhs = b[0] + b[1] * x1 + b[2] * x2, rhs = c1 * c2 * d1 * d2 * Q.Z(s1, s2);
      if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs)))
        throw Error(ErrorKind::SelfCheckFailure, "Segre identity fails");
    }
  return S;
}

namespace {

// Calabi criterion with beta = 0. On the Segre cube s / mu0 must be affine in xi; with
// b = (1, c1 gamma, 0) its only non-affine coefficients are those of xi1^2, xi1 xi2, xi1^2 xi2.
bool calabi_extremal(const QuadData& Q) {
  const Rational& a = Q.alpha;
  const Rational& g = Q.gamma;
  const Rational& d = Q.delta;
  const Rational& c1 = Q.c1;
  const Rational& c2 = Q.c2;
  if (d * (d + 1) != 0) return false;
  Rational quad = 3 * a * a * c2 * c2 - 4 * a * c1 * c2 * g + 3 * a * c2 * c2 + 2 * c1 * c1 * d * g + c1 * c1 * g * g +
                  c1 * c1 * g - 2 * c1 * c2 * g;
  return quad == 0;
}

}  // namespace

ExtremalReport extremal_check(const QuadData& Q, int grid) {
  ExtremalReport rep;
  rep.cls = classify(Q);
  QuadSetup setup = quad_setup(Q);
  const auto& P = setup.polytope;
  auto G = levi_kahler_potential(P, *P.grouping());
  auto w = detect_projective_cube(P, *P.grouping());
  if (!w) throw Error(ErrorKind::SelfCheckFailure, "quadrilateral without a projective-cube weight");

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> s, swp;
  for (const auto& mu : interior_grid(P, grid)) {
    auto c = curvature_sample(G, mu, w->w, 4.0);
    pts.push_back(mu);
    s.push_back(c.s);
    swp.push_back(c.s_wp);
  }
  auto fit = affine_fit(pts, s);
  rep.fit_residual = fit.max_residual;
  rep.numeric_extremal = fit.max_residual < 1e-8;
  rep.extremal_function = fit.f;
  auto wfit = affine_fit(pts, swp);
  rep.wp_fit_residual = wfit.max_residual;
  double lo = *std::min_element(swp.begin(), swp.end()), hi = *std::max_element(swp.begin(), swp.end());
  rep.wp_spread = (hi - lo) / std::max(std::abs(hi), std::abs(lo));
  rep.wp_constant = rep.wp_spread < 1e-8;

  if (rep.cls.tag == AmbitoricTag::Product) rep.closed_form_extremal = true;
  else if (rep.cls.tag == AmbitoricTag::Calabi) rep.closed_form_extremal = calabi_extremal(rep.cls.beta_zero ? Q : Q.swapped());
  if (rep.closed_form_extremal && *rep.closed_form_extremal != rep.numeric_extremal)
    throw Error(ErrorKind::SelfCheckFailure, "closed-form extremality criterion disagrees with the numeric fit (residual " +
                                                 std::to_string(rep.fit_residual) + ")");
  return rep;
}

}  // namespace lkq
