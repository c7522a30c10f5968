#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lkq/error.hpp"
#include "lkq/polytope.hpp"
#include "lkq/sampling.hpp"

namespace lkq {

// Chart convention: h = R^{m+1} with the constant term of each label first.
struct LeviSetup {
  int m = 0, ell = 0, d = 0;
  std::vector<AffineFunction> labels;
  Grouping grouping;
  std::vector<int> factor_of;  // s -> i(s)
  Eigen::MatrixXd L_mat;       // (m+1) x d
  Eigen::MatrixXd u_mat;       // m x d
  Eigen::MatrixXd g_basis;     // d x l, spans ker u
  Eigen::VectorXd lambda;      // l
  Eigen::MatrixXd ref_basis;   // d x l, factor indicator vectors
  Eigen::VectorXd lambda_o;    // all ones
  double scale = 1.0;          // largest |label coefficient|
};

// Works on raw labels so that non-positive pairs can be examined too.
LeviSetup setup_from_labels(int m, const std::vector<AffineFunction>& labels, const Grouping& g);
LeviSetup setup_from_labels(int m, const std::vector<ExactAffine>& labels, const Grouping& g);
LeviSetup setup_from_polytope(const LabelledPolytope& P, const Grouping& g);

double transversality_det(const SigmaPoint& sigma, const LeviSetup& setup);
Eigen::VectorXd characteristic(const SigmaPoint& sigma, const LeviSetup& setup);

struct MomentResult {
  Eigen::VectorXd mu;
  Eigen::VectorXd chi;
  double residual = 0;
};
MomentResult moment(const SigmaPoint& sigma, const LeviSetup& setup);

struct PositivityReport {
  bool combinatorial = false;
  bool stochastic = false;
  double min_chi = 0;
  int samples = 0;
  std::optional<ErrorKind> polytope_error;  // why the labels do not bound a valid polytope

  bool positive() const { return combinatorial && stochastic; }
};

// Both verdicts are computed; a disagreement throws SelfCheckFailure.
PositivityReport is_positive_pair(int m, const std::vector<AffineFunction>& labels, const Grouping& g, int n = 10000,
                                  std::uint64_t seed = 0);
PositivityReport is_positive_pair(const LabelledPolytope& P, const Grouping& g, int n = 10000, std::uint64_t seed = 0);

}  // namespace lkq
