#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "lkq/cube.hpp"
#include "lkq/levi.hpp"
#include "lkq/polytope.hpp"
#include "lkq/rational.hpp"

namespace lkq {

// C = (alpha gamma; beta delta), canonical basis w_i = e_i + sum_j C_ji e_j0
struct QuadData {
  Rational alpha, gamma, beta, delta;
  Rational c1, c2;

  static QuadData from_doubles(double alpha, double gamma, double beta, double delta, double c1, double c2);
  Rational Z(const Rational& s1, const Rational& s2) const;
  double Z(double s1, double s2) const;
  QuadData swapped() const;  // exchange the two sphere factors
};

struct QuadSetup {
  LabelledPolytope polytope;
  LeviSetup levi;
};

// closed-form momenta at (sigma_1, sigma_2)
Eigen::Vector2d quad_moment(const QuadData& Q, double s1, double s2);
// labels L10 = mu1, L11 = c1 - (1+alpha) mu1 - beta mu2, L20 = mu2, L21 = c2 - gamma mu1 - (1+delta) mu2
QuadSetup quad_setup(const QuadData& Q);

enum class AmbitoricTag { Product, Calabi, Orthotoric };
std::string to_string(AmbitoricTag tag);

struct AmbitoricClass {
  AmbitoricTag tag = AmbitoricTag::Product;
  bool beta_zero = false, gamma_zero = false;
  int dim_g_ab1 = 0, dim_g_ab2 = 0;  // dim of g intersected with each factor torus algebra
};
AmbitoricClass classify(const QuadData& Q);

struct SegreData {
  Rational k1, k2;  // c1 gamma - c2 alpha, c2 beta - c1 delta
  CubeAnsatz cube;  // b = (1, c1 gamma, c2 beta); quad momenta are c1 c2 times the cube momenta
  double xi1(double sigma1) const;
  double xi2(double sigma2) const;
  double c1 = 0, c2 = 0;
};
SegreData segre_coordinates(const QuadData& Q);

struct ExtremalReport {
  AmbitoricClass cls;
  bool numeric_extremal = false;
  double fit_residual = 0;
  AffineFunction extremal_function;
  std::optional<bool> closed_form_extremal;  // product and Calabi cases
  bool wp_constant = false;                  // s_{J,w,4} constant
  double wp_spread = 0;
  double wp_fit_residual = 0;
};
ExtremalReport extremal_check(const QuadData& Q, int grid = 14);

}  // namespace lkq
