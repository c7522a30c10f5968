#include "lkq/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lkq/error.hpp"
#include "lkq/parallel.hpp"

namespace lkq {

namespace {

struct Derivs {
  Eigen::MatrixXd H;
  Eigen::MatrixXd A;     // columns a_k of the non-constant terms
  Eigen::VectorXd w, v;  // c/L^2 and c/L^3
  Eigen::MatrixXd Gram;  // a_k^T H a_l
};

Derivs derivs(const SymplecticPotential& G, const Eigen::VectorXd& mu) {
  Derivs D;
  D.H = G.metric_H(mu);
  std::vector<int> live;
  for (int k = 0; k < static_cast<int>(G.terms().size()); ++k)
    if (!G.terms()[k].L.a.isZero()) live.push_back(k);
  const int n = static_cast<int>(live.size());
  D.A.resize(G.dim(), n);
  D.w.resize(n);
  D.v.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& t = G.terms()[live[j]];
    double L = t.L(mu);
    D.A.col(j) = t.L.a;
    D.w[j] = t.c / (L * L);
    D.v[j] = t.c / (L * L * L);
  }
  D.Gram = D.A.transpose() * D.H * D.A;
  return D;
}

double distance_to_boundary(const LabelledPolytope& P, const Eigen::VectorXd& mu) {
  double r = INFINITY;
  for (const auto& f : P.facets()) r = std::min(r, f(mu) / f.a.norm());
  return r;
}

}  // namespace

double abreu_scalar(const SymplecticPotential& G, const Eigen::VectorXd& mu) {
  Derivs D = derivs(G, mu);
  const Eigen::VectorXd g = D.Gram.diagonal();
  const Eigen::MatrixXd& M = D.Gram;
  // sum_ij d_i d_j H_ij = sum_kl w_k w_l (G_kk G_kl G_ll + G_kl^3) - 2 sum_k v_k G_kk^2
  Eigen::MatrixXd cube = M.array().cube().matrix();
  Eigen::MatrixXd outer = (g.asDiagonal() * M * g.asDiagonal());
  double sum = D.w.dot((outer + cube) * D.w) - 2.0 * D.v.dot(g.cwiseProduct(g));
  return -sum;
}

double laplacian_affine(const SymplecticPotential& G, const Eigen::VectorXd& mu, const Eigen::VectorXd& a) {
  Derivs D = derivs(G, mu);
  // sum_i d_i H_ij = sum_k w_k G_kk (H a_k)_j
  Eigen::VectorXd b = D.A.transpose() * (D.H * a);
  return -(D.w.cwiseProduct(D.Gram.diagonal())).dot(b);
}

double abreu_scalar_fd(const SymplecticPotential& G, const Eigen::VectorXd& mu, double rel_step) {
  const int m = G.dim();
  const double h0 = rel_step * distance_to_boundary(G.domain(), mu);
  if (!(distance_to_boundary(G.domain(), mu) > 10.0 * h0 + G.boundary_margin()))
    throw Error(ErrorKind::BoundaryProximity, "finite difference stencil leaves the interior");
  auto second = [&](double h) {
    double sum = 0;
    const Eigen::MatrixXd H0 = G.metric_H(mu);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Unit(m, i) * h;
      sum += (G.metric_H(mu + e)(i, i) - 2.0 * H0(i, i) + G.metric_H(mu - e)(i, i)) / (h * h);
      for (int j = i + 1; j < m; ++j) {
        Eigen::VectorXd f = Eigen::VectorXd::Unit(m, j) * h;
        double mixed = G.metric_H(mu + e + f)(i, j) - G.metric_H(mu + e - f)(i, j) - G.metric_H(mu - e + f)(i, j) +
                       G.metric_H(mu - e - f)(i, j);
        sum += 2.0 * mixed / (4.0 * h * h);
      }
    }
    return sum;
  };
  double coarse = second(h0), fine = second(h0 / 2);
  return -(4.0 * fine - coarse) / 3.0;
}

double laplacian_affine_fd(const SymplecticPotential& G, const Eigen::VectorXd& mu, const Eigen::VectorXd& a,
                           double rel_step) {
  const int m = G.dim();
  const double h0 = rel_step * distance_to_boundary(G.domain(), mu);
  if (!(distance_to_boundary(G.domain(), mu) > 10.0 * h0 + G.boundary_margin()))
    throw Error(ErrorKind::BoundaryProximity, "finite difference stencil leaves the interior");
  auto first = [&](double h) {
    double sum = 0;
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Unit(m, i) * h;
      Eigen::VectorXd row = (G.metric_H(mu + e).row(i) - G.metric_H(mu - e).row(i)).transpose() / (2.0 * h);
      sum += row.dot(a);
    }
    return sum;
  };
  double coarse = first(h0), fine = first(h0 / 2);
  return -(4.0 * fine - coarse) / 3.0;
}

CurvatureSample curvature_sample(const SymplecticPotential& G, const Eigen::VectorXd& mu, const AffineFunction& w,
                                 double p) {
  CurvatureSample c;
  c.mu = mu;
  c.p = p;
  c.w_value = w(mu);
  if (!(c.w_value > 0)) throw Error(ErrorKind::NonpositiveWeight, "weight function is not positive at the point");
  Derivs D = derivs(G, mu);
  const Eigen::VectorXd g = D.Gram.diagonal();
  Eigen::MatrixXd cube = D.Gram.array().cube().matrix();
  Eigen::MatrixXd outer = g.asDiagonal() * D.Gram * g.asDiagonal();
  c.s = -(D.w.dot((outer + cube) * D.w) - 2.0 * D.v.dot(g.cwiseProduct(g)));
  Eigen::VectorXd b = D.A.transpose() * (D.H * w.a);
  double lap = -(D.w.cwiseProduct(g)).dot(b);
  double norm = w.a.dot(D.H * w.a);
  c.s_wp = c.w_value * c.w_value * c.s - 2.0 * (p - 1.0) * c.w_value * lap - p * (p - 1.0) * norm;
  return c;
}

double wp_scalar(const SymplecticPotential& G, const Eigen::VectorXd& mu, const AffineFunction& w, double p) {
  return curvature_sample(G, mu, w, p).s_wp;
}

AffineFit affine_fit(const std::vector<Eigen::VectorXd>& points, const std::vector<double>& values) {
  const int n = static_cast<int>(points.size());
  if (n == 0 || static_cast<int>(values.size()) != n) throw Error(ErrorKind::DegenerateSampleSet, "no samples");
  const int m = static_cast<int>(points[0].size());
  if (n < m + 2) throw Error(ErrorKind::DegenerateSampleSet, "need at least m+2 samples");
  Eigen::MatrixXd X(n, m + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X.block(i, 1, 1, m) = points[i].transpose();
    y[i] = values[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-12);
  if (qr.rank() < m + 1) throw Error(ErrorKind::DegenerateSampleSet, "samples lie in a hyperplane");
  Eigen::VectorXd coef = qr.solve(y);
  AffineFit fit;
  fit.f = {coef[0], coef.tail(m)};
  fit.range = y.maxCoeff() - y.minCoeff();
  double worst = (X * coef - y).cwiseAbs().maxCoeff();
  double scale = std::max(fit.range, 1e-12 * std::max(1.0, y.cwiseAbs().maxCoeff()));
  // a constant sample set is affine; compare against its magnitude instead
  if (fit.range <= 1e-12 * std::max(1.0, y.cwiseAbs().maxCoeff())) scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  fit.max_residual = worst / scale;
  return fit;
}

std::vector<QuadratureNode> quadrature_nodes(const LabelledPolytope& P, int n) {
  const int m = P.dim();
  const auto simplices = triangulate(P);
  if (simplices.empty() || n < 1) throw Error(ErrorKind::QuadratureFailure, "no quadrature cells");
  int k = std::max(1, static_cast<int>(std::lround(std::pow(double(n) / simplices.size(), 1.0 / m))));
  double fact = 1;
  for (int j = 2; j <= m; ++j) fact *= j;

  // centroids of the Kuhn simplices inside k * {1 >= x_1 >= ... >= x_m >= 0}, scaled back by 1/k
  std::vector<Eigen::VectorXd> cells;
  std::vector<int> perm(m);
  std::vector<int> z(m, 0);
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Eigen::VectorXd c(m);
      for (int j = 0; j < m; ++j) c[j] = z[j];
      for (int j = 0; j < m; ++j) c[perm[j]] += double(m - j) / (m + 1);
      bool inside = c[0] < k && c[m - 1] > 0;
      for (int j = 0; j + 1 < m && inside; ++j) inside = c[j] > c[j + 1];
      if (inside) cells.push_back(c / k);
    } while (std::next_permutation(perm.begin(), perm.end()));
    int i = 0;
    while (i < m && ++z[i] == k) z[i++] = 0;
    if (i == m) break;
  }
  long long expected = 1;
  for (int j = 0; j < m; ++j) expected *= k;
  if (static_cast<long long>(cells.size()) != expected) throw Error(ErrorKind::QuadratureFailure, "subdivision count mismatch");

  std::vector<QuadratureNode> nodes;
  nodes.reserve(cells.size() * simplices.size());
  for (const auto& S : simplices) {
    Eigen::MatrixXd E(m, m);
    for (int j = 0; j < m; ++j) E.col(j) = S[j + 1] - S[0];
    double vol = std::abs(E.determinant()) / fact;
    if (vol <= 0) continue;
    double weight = vol / static_cast<double>(expected);
    for (const auto& x : cells) {
      Eigen::VectorXd mu = (1.0 - x[0]) * S[0];
      for (int j = 1; j < m; ++j) mu += (x[j - 1] - x[j]) * S[j];
      mu += x[m - 1] * S[m];
      nodes.push_back({mu, weight});
    }
  }
  return nodes;
}

double futaki(const SymplecticPotential& G, const AffineFunction& w, double p, const AffineFunction& h, int n_quad,
              int threads) {
  const auto nodes = quadrature_nodes(G.domain(), n_quad);
  const int n = static_cast<int>(nodes.size());
  std::vector<double> s(n), rho(n);
  parallel_for(n, threads, [&](int i) {
    const auto& mu = nodes[i].mu;
    double wv = w(mu);
    if (!(wv > 0)) throw Error(ErrorKind::NonpositiveWeight, "weight function is not positive on the polytope");
    s[i] = wp_scalar(G, mu, w, p);
    rho[i] = nodes[i].weight * std::pow(wv, -(p + 1.0));
  });
  // fixed summation order keeps the result independent of the thread count
  double mass = 0, first = 0;
  for (int i = 0; i < n; ++i) {
    mass += rho[i];
    first += rho[i] * s[i];
  }
  if (!(mass > 0) || !std::isfinite(first)) throw Error(ErrorKind::QuadratureFailure, "quadrature produced no mass");
  const double mean = first / mass;
  double F = 0;
  for (int i = 0; i < n; ++i) F += rho[i] * (s[i] - mean) * h(nodes[i].mu);
  if (!std::isfinite(F)) throw Error(ErrorKind::QuadratureFailure, "non-finite quadrature value");
  return F;
}

std::vector<Eigen::VectorXd> interior_grid(const LabelledPolytope& P, int k, double margin) {
  const int m = P.dim();
  auto [lo, hi] = P.bounding_box();
  const double gap = margin * P.diameter();
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(m, 0);
  for (;;) {
    Eigen::VectorXd x(m);
    for (int j = 0; j < m; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * (idx[j] + 0.5) / k;
    bool ok = true;
    for (const auto& f : P.facets()) ok = ok && f(x) >= gap * f.a.norm();
    if (ok) out.push_back(x);
    int i = 0;
    while (i < m && ++idx[i] == k) idx[i++] = 0;
    if (i == m) break;
  }
  return out;
}

}  // namespace lkq
