#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lkq/levi.hpp"
#include "lkq/polytope.hpp"
#include "lkq/sampling.hpp"

namespace lkq {

struct MomentImageReport {
  int samples = 0;
  int singular = 0;          // sigma where the characteristic system could not be solved
  double min_margin = 0;     // smallest label value over all images
  bool containment = false;  // min_margin >= -1e-9 and no singular points
  double hull_measure = 0;
  double polytope_measure = 0;
  double coverage = 0;
  bool covered = false;  // coverage >= 0.99
  bool pass() const { return containment && covered; }
};

// With strict set, a failed containment or coverage throws.
MomentImageReport moment_image_test(const LabelledPolytope& P, const Grouping& g, const SampleBatch& batch,
                                    bool strict = true, int threads = 1);

struct HorizontalReport {
  int dim = 0;  // dimension of D after dropping vanishing sigma
  Eigen::VectorXd chi;
  Eigen::VectorXd eigenvalues;
  int negative = 0, positive = 0, zero = 0;
  int expected_negative = 0;  // sum of 2 m_i over factors with chi_i < 0
  bool positive_definite() const { return dim > 0 && positive == dim; }
};

// Restriction of sum_s 2 chi_s (v_sigma^2 / (2 sigma_s) + 2 sigma_s v_theta^2) to
// D = {sum_{I_i} v_sigma = 0, sum_{I_i} sigma v_theta = 0}.
HorizontalReport horizontal_positivity(const SigmaPoint& sigma, const LeviSetup& setup);

}  // namespace lkq
