#include "lkq/sphere_lab.hpp"

#include <algorithm>
#include <cmath>

#include "lkq/error.hpp"
#include "lkq/hull.hpp"
#include "lkq/parallel.hpp"

namespace lkq {

MomentImageReport moment_image_test(const LabelledPolytope& P, const Grouping& g, const SampleBatch& batch,
                                    bool strict, int threads) {
  const int m = P.dim();
  if (m < 1 || m > 3) throw Error(ErrorKind::Input, "moment image test supports dimensions 1 to 3");
  auto setup = setup_from_polytope(P, g);
  const int n = static_cast<int>(batch.points.size());
  if (n < 1) throw Error(ErrorKind::Input, "empty sample batch");

  std::vector<Eigen::VectorXd> img(n);
  std::vector<char> ok(n, 0);
  std::vector<double> margin(n, 0);
  parallel_for(n, threads, [&](int k) {
    try {
      img[k] = moment(batch.points[k], setup).mu;
      margin[k] = P.min_label(img[k]);
      ok[k] = 1;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularSystem && e.kind() != ErrorKind::Inconsistent) throw;
    }
  });

  MomentImageReport rep;
  rep.samples = n;
  rep.min_margin = INFINITY;
  std::vector<Eigen::VectorXd> good;
  for (int k = 0; k < n; ++k) {
    if (!ok[k]) {
      ++rep.singular;
      continue;
    }
    rep.min_margin = std::min(rep.min_margin, margin[k]);
    good.push_back(img[k]);
  }
  rep.containment = rep.singular == 0 && rep.min_margin >= -1e-9;

  rep.polytope_measure = volume(P);
  if (m == 1) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& p : good) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
    rep.hull_measure = good.empty() ? 0 : hi - lo;
  } else if (m == 2) {
    std::vector<Eigen::Vector2d> pts;
    for (const auto& p : good) pts.emplace_back(p[0], p[1]);
    rep.hull_measure = pts.size() < 3 ? 0 : hull_area_2d(pts);
  } else {
    std::vector<Eigen::Vector3d> pts;
    for (const auto& p : good) pts.emplace_back(p[0], p[1], p[2]);
    rep.hull_measure = hull_volume_3d(pts);
  }
  rep.coverage = rep.hull_measure / rep.polytope_measure;
  rep.covered = rep.coverage >= 0.99;

  if (strict && !rep.containment)
    throw Error(ErrorKind::ContainmentFailure, "moment image leaves the polytope (margin " +
                                                   std::to_string(rep.min_margin) + ", singular " +
                                                   std::to_string(rep.singular) + ")");
  if (strict && !rep.covered)
    throw Error(ErrorKind::CoverageFailure, "hull covers " + std::to_string(rep.coverage) + " of the polytope");
  return rep;
}

HorizontalReport horizontal_positivity(const SigmaPoint& sigma, const LeviSetup& setup) {
  const Eigen::VectorXd& s = sigma.sigma;
  const int d = setup.d;
  if (s.size() != d) throw Error(ErrorKind::Input, "sigma has the wrong length");
  HorizontalReport rep;
  rep.chi = characteristic(sigma, setup);

  // v = (v_sigma, v_theta); one basis block per factor over its nonzero entries
  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < setup.ell; ++i) {
    std::vector<int> supp;
    for (int r : setup.grouping.factors[i])
      if (s[r] > 0) supp.push_back(r);
    if (supp.size() < 2)
      throw Error(ErrorKind::SingularRestriction, "factor " + std::to_string(i) + " has a single nonzero sigma");
    const int r0 = supp[0];
    for (size_t j = 1; j < supp.size(); ++j) {
      const int r = supp[j];
      Eigen::VectorXd vs = Eigen::VectorXd::Zero(2 * d), vt = Eigen::VectorXd::Zero(2 * d);
      vs[r] = 1;
      vs[r0] = -1;
      vt[d + r] = 1 / s[r];
      vt[d + r0] = -1 / s[r0];
      basis.push_back(vs);
      basis.push_back(vt);
    }
  }
  rep.dim = static_cast<int>(basis.size());

  Eigen::MatrixXd B(2 * d, rep.dim);
  for (int k = 0; k < rep.dim; ++k) B.col(k) = basis[k];
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(B).householderQ() * Eigen::MatrixXd::Identity(2 * d, rep.dim);

  Eigen::VectorXd diag(2 * d);
  for (int r = 0; r < d; ++r) {
    double chi = rep.chi[setup.factor_of[r]];
    diag[r] = s[r] > 0 ? 2 * chi / (2 * s[r]) : 0;
    diag[d + r] = 2 * chi * 2 * s[r];
  }
  Eigen::MatrixXd M = Q.transpose() * diag.asDiagonal() * Q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  rep.eigenvalues = es.eigenvalues();
  const double tol = 1e-12 * std::max(1.0, rep.eigenvalues.cwiseAbs().maxCoeff());
  for (int k = 0; k < rep.dim; ++k) {
    if (rep.eigenvalues[k] > tol) ++rep.positive;
    else if (rep.eigenvalues[k] < -tol) ++rep.negative;
    else ++rep.zero;
  }
  auto dims = setup.grouping.dims();
  for (int i = 0; i < setup.ell; ++i)
    if (rep.chi[i] < 0) rep.expected_negative += 2 * dims[i];
  bool full = rep.dim == 2 * setup.m;
  if (full && (rep.negative != rep.expected_negative || rep.zero != 0))
    throw Error(ErrorKind::SelfCheckFailure, "signature of the horizontal form disagrees with the signs of chi");
  return rep;
}

}  // namespace lkq
