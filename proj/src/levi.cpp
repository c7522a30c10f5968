#include "lkq/levi.hpp"

#include <cmath>

#include "lkq/linalg.hpp"

namespace lkq {

namespace {

LeviSetup common(int m, const std::vector<AffineFunction>& labels, const Grouping& g) {
  LeviSetup S;
  S.m = m;
  S.ell = g.ell();
  S.d = static_cast<int>(labels.size());
  S.labels = labels;
  S.grouping = g;
  S.factor_of = g.factor_of(S.d);
  if (S.d != m + S.ell) throw Error(ErrorKind::GroupingMismatch, "expected |S| = m + l");
  S.L_mat.resize(m + 1, S.d);
  S.scale = 0;
  for (int s = 0; s < S.d; ++s) {
    if (labels[s].a.size() != m) throw Error(ErrorKind::Input, "label has wrong dimension");
    S.L_mat(0, s) = labels[s].a0;
    S.L_mat.block(1, s, m, 1) = labels[s].a;
    S.scale = std::max(S.scale, S.L_mat.col(s).cwiseAbs().maxCoeff());
  }
  S.u_mat = S.L_mat.bottomRows(m);
  S.ref_basis = Eigen::MatrixXd::Zero(S.d, S.ell);
  for (int s = 0; s < S.d; ++s) S.ref_basis(s, S.factor_of[s]) = 1.0;
  S.lambda_o = Eigen::VectorXd::Ones(S.ell);
  return S;
}

template <class T>
void fill_kernel(LeviSetup& S, const linalg::Mat<T>& u) {
  if (linalg::rank(u, kCombTol) < S.m) throw Error(ErrorKind::RankDeficient, "label normals do not span");
  auto ker = linalg::nullspace(u, S.d, kCombTol);
  if (static_cast<int>(ker.size()) != S.ell) throw Error(ErrorKind::RankDeficient, "kernel has the wrong dimension");
  S.g_basis.resize(S.d, S.ell);
  for (int k = 0; k < S.ell; ++k)
    for (int s = 0; s < S.d; ++s) {
      if constexpr (std::is_same_v<T, Rational>) S.g_basis(s, k) = to_double(ker[k][s]);
      else S.g_basis(s, k) = ker[k][s];
    }
}

}  // namespace

LeviSetup setup_from_labels(int m, const std::vector<AffineFunction>& labels, const Grouping& g) {
  LeviSetup S = common(m, labels, g);
  linalg::Mat<double> u(m, std::vector<double>(S.d));
  for (int j = 0; j < m; ++j)
    for (int s = 0; s < S.d; ++s) u[j][s] = S.u_mat(j, s);
  fill_kernel(S, u);
  S.lambda = S.g_basis.transpose() * S.L_mat.row(0).transpose();
  return S;
}

LeviSetup setup_from_labels(int m, const std::vector<ExactAffine>& labels, const Grouping& g) {
  std::vector<AffineFunction> dl;
  for (const auto& f : labels) dl.push_back(f.to_double());
  LeviSetup S = common(m, dl, g);
  linalg::Mat<Rational> u(m, std::vector<Rational>(S.d));
  for (int j = 0; j < m; ++j)
    for (int s = 0; s < S.d; ++s) u[j][s] = labels[s].a[j];
  fill_kernel(S, u);
  // lambda exactly, then rounded
  auto ker = linalg::nullspace(u, S.d);
  S.lambda.resize(S.ell);
  for (int k = 0; k < S.ell; ++k) {
    Rational l = 0;
    for (int s = 0; s < S.d; ++s) l += ker[k][s] * labels[s].a0;
    S.lambda[k] = to_double(l);
  }
  return S;
}

LeviSetup setup_from_polytope(const LabelledPolytope& P, const Grouping& g) {
  if (P.exact()) return setup_from_labels(P.dim(), P.exact_facets(), g);
  return setup_from_labels(P.dim(), P.facets(), g);
}

double transversality_det(const SigmaPoint& sigma, const LeviSetup& S) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(S.d, S.d);
  for (int s = 0; s < S.d; ++s) {
    A(S.factor_of[s], s) = sigma.sigma[s];
    A.block(S.ell, s, S.m, 1) = S.u_mat.col(s);
  }
  return A.determinant();
}

Eigen::VectorXd characteristic(const SigmaPoint& sigma, const LeviSetup& S) {
  Eigen::MatrixXd M = S.g_basis.transpose() * (2.0 * sigma.sigma).asDiagonal() * S.ref_basis;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  // relative pivot test: a vanishing transversality determinant makes M singular
  double biggest = M.cwiseAbs().maxCoeff();
  if (!(biggest > 0) || lu.rank() < S.ell ||
      std::abs(lu.determinant()) <= 1e-13 * std::pow(biggest, S.ell))
    throw Error(ErrorKind::SingularSystem, "transversality fails at sigma");
  return lu.solve(S.lambda);
}

MomentResult moment(const SigmaPoint& sigma, const LeviSetup& S) {
  MomentResult r;
  r.chi = characteristic(sigma, S);
  Eigen::VectorXd rhs(S.d);
  for (int s = 0; s < S.d; ++s) rhs[s] = 2.0 * r.chi[S.factor_of[s]] * sigma.sigma[s] - S.L_mat(0, s);
  Eigen::MatrixXd A = S.u_mat.transpose();
  r.mu = A.colPivHouseholderQr().solve(rhs);
  r.residual = (A * r.mu - rhs).cwiseAbs().maxCoeff();
  double bound = 1e-10 * std::max(1.0, sigma.sigma.norm()) * std::max(1.0, S.scale) *
                 std::max(1.0, r.chi.cwiseAbs().maxCoeff() + r.mu.cwiseAbs().maxCoeff());
  if (!(r.residual <= bound)) throw Error(ErrorKind::Inconsistent, "moment equations are inconsistent (residual " + std::to_string(r.residual) + ")");
  return r;
}

PositivityReport is_positive_pair(int m, const std::vector<AffineFunction>& labels, const Grouping& g, int n,
                                  std::uint64_t seed) {
  PositivityReport rep;
  try {
    LabelledPolytope P(m, labels, g);
    rep.combinatorial = matches_product_of_simplices(P, g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::GroupingMismatch) throw;
    rep.combinatorial = false;
    rep.polytope_error = e.kind();
  }
  LeviSetup S = setup_from_labels(m, labels, g);
  Rng rng(seed);
  rep.samples = n;
  rep.min_chi = INFINITY;
  rep.stochastic = true;
  for (int k = 0; k < n; ++k) {
    SigmaPoint sigma = sample_sigma(g, rng);
    try {
      rep.min_chi = std::min(rep.min_chi, characteristic(sigma, S).minCoeff());
    } catch (const Error&) {
      rep.stochastic = false;
    }
  }
  if (!(rep.min_chi > 0)) rep.stochastic = false;
  if (rep.combinatorial != rep.stochastic)
    throw Error(ErrorKind::SelfCheckFailure, std::string("combinatorial verdict ") + (rep.combinatorial ? "true" : "false") +
                                                 " disagrees with sampled characteristic function (min chi " +
                                                 std::to_string(rep.min_chi) + ")");
  return rep;
}

PositivityReport is_positive_pair(const LabelledPolytope& P, const Grouping& g, int n, std::uint64_t seed) {
  return is_positive_pair(P.dim(), P.facets(), g, n, seed);
}

}  // namespace lkq
