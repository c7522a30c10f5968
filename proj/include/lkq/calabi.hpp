#pragma once

#include <cstdint>
#include <vector>

#include "lkq/polytope.hpp"
#include "lkq/rational.hpp"

namespace lkq {

// One base factor of a toric bundle: a grouped polytope Delta_j, with the fibre
// scaling <p_j, x> + c_j of its symplectic form.
struct BaseFactor {
  LabelledPolytope polytope;
  std::vector<Rational> p;
  Rational c;
};

struct FibrationData {
  LabelledPolytope fibre;
  std::vector<BaseFactor> base;
};

// <p_j, x> + c_j as an affine function on the fibre
AffineFunction fibre_scaling(const FibrationData& data, int j);

// Coordinates (x, yhat_1, ..., yhat_k) with yhat_j = y_j (<p_j, x> + c_j). Fibre labels are
// kept, base labels b0 + <b, y> become b0 (<p_j, x> + c_j) + <b, yhat_j>.
LabelledPolytope hat_polytope(const FibrationData& data);

struct ComposeReport {
  int points = 0;
  double offset = 0;  // mean of G_hat - composed
  double spread = 0;  // max - min of the same difference
  bool pass = false;
};

// LK potential of the hat polytope against G_V(x) + sum_j D_j(x) G_j(yhat_j / D_j(x)).
// Throws IdentityFailure when the difference is not constant to 1e-9.
ComposeReport compose_check(const FibrationData& data, int n = 100, std::uint64_t seed = 0);

// F(x) = -c (x^2 - 1)(x - beta)(x - eta), p_c(t) = t - eta
struct HFKGData {
  Rational beta, eta, c;

  static HFKGData family(int n);  // beta = 1/n, eta = -n, c = 2/(3n^2+1)
  static HFKGData with_scalar(const Rational& beta, const Rational& eta, const Rational& s);
  Rational F(const Rational& x) const;
  // F / p_c = -c (x^2 - 1)(x - beta)
  Rational Q(const Rational& x) const;
  // 2c(3 eta^2 - 2 beta eta - 1), which equals -F''(eta)
  Rational scalar() const;
  void validate() const;
};

// labels L_{-1}, L_{+1}, L_beta in (sigma_1, sigma_2), one simplex factor
LabelledPolytope hfkg_fibre(const HFKGData& data);

// fibre over an interval base [0, 4/s] with p = (-eta, 1), c = eta^2
FibrationData hfkg_fibration(const HFKGData& data, const Rational& s);

struct CSCReport {
  Rational identity_s;
  bool condition = false;
  int points = 0;
  double s_min = 0, s_max = 0, s_mean = 0;
  double spread = 0;  // (max - min) / max |s|
  bool constant = false;
};

// grid points per axis over (xi_1, xi_2, z)
CSCReport csc_certify(const HFKGData& data, const Rational& s, int grid = 10, int threads = 1);

}  // namespace lkq
