#include "lkq/potential.hpp"

#include <cmath>
#include <string>

#include "lkq/error.hpp"
#include "lkq/levi.hpp"
#include "lkq/sampling.hpp"

namespace lkq {

SymplecticPotential::SymplecticPotential(std::vector<PotentialTerm> terms, LabelledPolytope domain)
    : terms_(std::move(terms)), domain_(std::move(domain)) {
  margin_ = 1e-7 * domain_.diameter();
  for (const auto& t : terms_)
    if (t.L.a.size() != domain_.dim()) throw Error(ErrorKind::Input, "potential term has wrong dimension");
}

void SymplecticPotential::require_interior(const Eigen::VectorXd& mu) const {
  for (int s = 0; s < domain_.size(); ++s) {
    const auto& f = domain_.facet(s);
    // Euclidean distance to the facet hyperplane
    if (!(f(mu) > margin_ * f.a.norm()))
      throw Error(ErrorKind::BoundaryProximity, "point is within the boundary margin of facet " + std::to_string(s));
  }
}

double SymplecticPotential::eval(const Eigen::VectorXd& mu) const {
  require_interior(mu);
  double g = 0;
  for (const auto& t : terms_) {
    double L = t.L(mu);
    if (L != 0) g += t.c * L * std::log(std::abs(L));
  }
  return g;
}

Eigen::VectorXd SymplecticPotential::grad(const Eigen::VectorXd& mu) const {
  require_interior(mu);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
  for (const auto& t : terms_) {
    double L = t.L(mu);
    if (L == 0) {
      if (t.L.a.isZero()) continue;
      throw Error(ErrorKind::BoundaryProximity, "a potential term vanishes at the point");
    }
    g += t.c * (1.0 + std::log(std::abs(L))) * t.L.a;
  }
  return g;
}

Eigen::MatrixXd SymplecticPotential::hess(const Eigen::VectorXd& mu) const {
  require_interior(mu);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
  for (const auto& t : terms_) {
    if (t.L.a.isZero()) continue;
    double L = t.L(mu);
    if (L == 0) throw Error(ErrorKind::BoundaryProximity, "a potential term vanishes at the point");
    h.noalias() += (t.c / L) * t.L.a * t.L.a.transpose();
  }
  return h;
}

Eigen::MatrixXd SymplecticPotential::metric_H(const Eigen::VectorXd& mu) const {
  Eigen::MatrixXd h = hess(mu);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0) || hi / lo > 1e12) throw Error(ErrorKind::IllConditioned, "Hessian is not safely positive definite");
  Eigen::MatrixXd H = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (H + H.transpose());
}

AffineFunction infinity_label(const LabelledPolytope& P, const std::vector<int>& factor) {
  AffineFunction inf{0.0, Eigen::VectorXd::Zero(P.dim())};
  for (int s : factor) inf = inf + P.facet(s);
  return -inf;
}

SymplecticPotential levi_kahler_potential(const LabelledPolytope& P, const Grouping& g) {
  auto rep = is_positive_pair(P, g, 1000);
  if (!rep.positive()) throw Error(ErrorKind::NotPositivePair, "labels and grouping do not form a positive pair");
  std::vector<PotentialTerm> terms;
  for (const auto& factor : g.factors) {
    for (int s : factor) terms.push_back({P.facet(s), 0.5});
    terms.push_back({infinity_label(P, factor), 0.5});
  }
  return SymplecticPotential(std::move(terms), P);
}

SymplecticPotential guillemin_potential(const LabelledPolytope& P) {
  std::vector<PotentialTerm> terms;
  for (const auto& f : P.facets()) terms.push_back({f, 0.5});
  return SymplecticPotential(std::move(terms), P);
}

KahlerPotential::KahlerPotential(SymplecticPotential G, Eigen::VectorXd p) : G_(std::move(G)), p_(std::move(p)) {
  if (p_.size() != G_.dim()) throw Error(ErrorKind::Input, "basepoint has wrong dimension");
}

double KahlerPotential::operator()(const Eigen::VectorXd& mu) const {
  G_.require_interior(mu);
  double k = 0;
  for (const auto& t : G_.terms()) {
    double Lm = t.L(mu), Lp = t.L(p_);
    k += t.c * (Lm - Lp);
    if (Lp != 0) k -= t.c * Lp * std::log(std::abs(Lm));
  }
  return k;
}

KahlerPotential kahler_potential(const LabelledPolytope& P, const Grouping& g, std::optional<Eigen::VectorXd> p) {
  return KahlerPotential(levi_kahler_potential(P, g), p ? *p : P.barycenter());
}

namespace {

// derivative of H in direction v, from d(K^{-1}) = -H dK H
Eigen::MatrixXd dH(const SymplecticPotential& G, const Eigen::VectorXd& mu, const Eigen::MatrixXd& H,
                   const Eigen::VectorXd& v) {
  Eigen::MatrixXd dK = Eigen::MatrixXd::Zero(G.dim(), G.dim());
  for (const auto& t : G.terms()) {
    double L = t.L(mu);
    dK -= (t.c * t.L.a.dot(v) / (L * L)) * t.L.a * t.L.a.transpose();
  }
  return -H * dK * H;
}

}  // namespace

BoundaryReport abreu_boundary_check(const SymplecticPotential& G, double tol) {
  const auto& P = G.domain();
  BoundaryReport rep;
  rep.pass = true;
  const Eigen::VectorXd c = P.barycenter();
  const double d = 1e-3 * P.diameter();
  for (int s = 0; s < P.size(); ++s) {
    const auto& f = P.facet(s);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(P.dim());
    int count = 0;
    for (const auto& v : P.vertices())
      if (v.active >> s & 1) {
        q += v.point;
        ++count;
      }
    q /= count;
    const Eigen::VectorXd u = f.a;
    const double uu = u.squaredNorm();
    // three distances d, d/2, d/4; quadratic extrapolation to the facet
    Eigen::VectorXd hu[3];
    double du[3];
    for (int k = 0; k < 3; ++k) {
      double target = d * std::sqrt(uu) / double(1 << k);
      Eigen::VectorXd mu = q + (target / f(c)) * (c - q);
      Eigen::MatrixXd H = G.metric_H(mu);
      hu[k] = H * u;
      du[k] = u.dot(dH(G, mu, H, u) * u);
    }
    Eigen::VectorXd hu0 = (8.0 * hu[2] - 6.0 * hu[1] + hu[0]) / 3.0;
    double du0 = (8.0 * du[2] - 6.0 * du[1] + du[0]) / 3.0;
    FacetBoundaryResult r;
    r.facet = s;
    r.normal_residual = hu0.norm() / std::sqrt(uu) / std::max(1.0, P.diameter());
    r.derivative_residual = std::abs(du0 - 2.0 * uu) / (2.0 * uu);
    r.pass = r.normal_residual < tol && r.derivative_residual < tol;
    rep.pass = rep.pass && r.pass;
    rep.facets.push_back(r);
  }
  rep.min_eigenvalue = INFINITY;
  for (const auto& mu : interior_points(P, 200, 1, 0.95)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.hess(mu));
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());
  }
  rep.positive_definite = rep.min_eigenvalue > 0;
  rep.pass = rep.pass && rep.positive_definite;
  return rep;
}

}  // namespace lkq
