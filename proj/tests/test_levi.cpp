#include <doctest.h>

#include <cmath>

#include "lkq/error.hpp"
#include "lkq/levi.hpp"
#include "lkq/sampling.hpp"

using namespace lkq;

namespace {

LabelledPolytope quad(double a, double g, double b, double d, double c1, double c2) {
  std::vector<AffineFunction> L(4);
  L[0] = {0, Eigen::Vector2d(1, 0)};
  L[1] = {c1, Eigen::Vector2d(-(1 + a), -b)};
  L[2] = {0, Eigen::Vector2d(0, 1)};
  L[3] = {c2, Eigen::Vector2d(-g, -(1 + d))};
  return LabelledPolytope(2, L, Grouping{{{0, 1}, {2, 3}}});
}

}  // namespace

TEST_CASE("canonical pair has chi = 1/2") {
  for (auto dims : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {1, 2}, {3}, {1, 1, 1}, {2, 2}, {4}}) {
    auto P = standard_product(dims);
    auto S = setup_from_polytope(P, *P.grouping());
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
      auto chi = characteristic(sample_sigma(*P.grouping(), rng), S);
      CHECK((chi.array() - 0.5).abs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("canonical square: mu_i = sigma_i0") {
  auto P = standard_product({1, 1});
  auto S = setup_from_polytope(P, *P.grouping());
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    auto sig = sample_sigma(*P.grouping(), rng);
    auto r = moment(sig, S);
    const auto& f = P.grouping()->factors;
    CHECK(std::abs(r.mu[0] - sig.sigma[f[0][0]]) < 1e-12);
    CHECK(std::abs(r.mu[1] - sig.sigma[f[1][0]]) < 1e-12);
  }
}

TEST_CASE("moment map satisfies L_s(mu) = 2 chi sigma_s") {
  auto P = quad(0.2, 1.0 / 3, 0.25, 0.5, 1, 1.5);
  auto S = setup_from_polytope(P, *P.grouping());
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    auto sig = sample_sigma(*P.grouping(), rng);
    auto r = moment(sig, S);
    for (int s = 0; s < P.size(); ++s)
      CHECK(std::abs(P.facet(s)(r.mu) - 2 * r.chi[S.factor_of[s]] * sig.sigma[s]) < 1e-11);
    CHECK(P.min_label(r.mu) > -1e-12);
  }
}

TEST_CASE("chi is invariant under rescaling the characteristic normalisation") {
  // scaling every label by t scales chi by t
  auto P = quad(0.2, 1.0 / 3, 0.25, 0.5, 1, 1.5);
  std::vector<AffineFunction> L2;
  for (const auto& f : P.facets()) L2.push_back(f * 3.0);
  auto S1 = setup_from_polytope(P, *P.grouping());
  auto S2 = setup_from_labels(2, L2, *P.grouping());
  Rng rng(2);
  auto sig = sample_sigma(*P.grouping(), rng);
  CHECK((characteristic(sig, S2) - 3.0 * characteristic(sig, S1)).norm() < 1e-12);
}

TEST_CASE("positivity verdicts") {
  SUBCASE("products of simplices are positive") {
    for (auto dims : std::vector<std::vector<int>>{{1}, {1, 1}, {2, 1}, {1, 1, 1}}) {
      auto P = standard_product(dims);
      auto rep = is_positive_pair(P, *P.grouping(), 2000);
      CHECK(rep.positive());
      CHECK(rep.min_chi > 0);
    }
  }
  SUBCASE("adjacent facets grouped together are not") {
    auto P = standard_product({1, 1});
    Grouping g{{{0, 2}, {1, 3}}};
    auto rep = is_positive_pair(P, g, 2000);
    CHECK_FALSE(rep.combinatorial);
    CHECK_FALSE(rep.stochastic);
  }
  SUBCASE("labels that do not bound a polytope") {
    // mu1 >= 0, mu1 - 1 >= 0 is empty; mu2 facets fine
    std::vector<AffineFunction> L{{0, Eigen::Vector2d(1, 0)}, {-1, Eigen::Vector2d(1, 0)},
                                  {0, Eigen::Vector2d(0, 1)}, {1, Eigen::Vector2d(0, -1)}};
    auto rep = is_positive_pair(2, L, Grouping{{{0, 1}, {2, 3}}}, 2000);
    CHECK_FALSE(rep.positive());
    CHECK(rep.polytope_error.has_value());
  }
}

TEST_CASE("sigma normalisation and determinism") {
  Grouping g{{{0, 1, 2}, {3, 4}}};
  auto a = sample(g, 20, 7), b = sample(g, 20, 7), c = sample(g, 20, 8);
  bool differ = false;
  for (int k = 0; k < 20; ++k) {
    CHECK(a.points[k].sigma == b.points[k].sigma);
    differ |= a.points[k].sigma != c.points[k].sigma;
    CHECK(std::abs(a.points[k].sigma.head(3).sum() - 1) < 1e-15);
    CHECK(std::abs(a.points[k].sigma.tail(2).sum() - 1) < 1e-15);
    CHECK(a.points[k].sigma.minCoeff() >= 0);
  }
  CHECK(differ);
  CHECK_THROWS_AS(SigmaPoint::make(Eigen::VectorXd::Zero(5), g), Error);
}

TEST_CASE("transversality on a stratum") {
  auto P = standard_product({1, 1});
  auto S = setup_from_polytope(P, *P.grouping());
  Eigen::VectorXd raw(4);
  const auto& f = P.grouping()->factors;
  raw.setZero();
  raw[f[0][0]] = 1;
  raw[f[1][1]] = 1;
  auto sig = SigmaPoint::make(raw, *P.grouping());
  CHECK(std::abs(transversality_det(sig, S)) > 1e-12);
  auto r = moment(sig, S);
  CHECK(P.min_label(r.mu) > -1e-12);
}
