#include <doctest.h>

#include <cmath>

#include "lkq/error.hpp"
#include "lkq/potential.hpp"
#include "lkq/sampling.hpp"

using namespace lkq;

namespace {

Eigen::MatrixXd fd_hess(const SymplecticPotential& G, const Eigen::VectorXd& mu, double h) {
  const int m = G.dim();
  Eigen::MatrixXd H(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd ei = Eigen::VectorXd::Unit(m, i) * h, ej = Eigen::VectorXd::Unit(m, j) * h;
      H(i, j) = (G.eval(mu + ei + ej) - G.eval(mu + ei - ej) - G.eval(mu - ei + ej) + G.eval(mu - ei - ej)) / (4 * h * h);
    }
  return H;
}

}  // namespace

TEST_CASE("interval potential") {
  auto I = standard_product({1});
  auto G = levi_kahler_potential(I, *I.grouping());
  Eigen::VectorXd mu(1);
  mu << 0.3;
  // labels mu, 1 - mu and the constant infinity label -1
  double expect = 0.5 * (0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  CHECK(G.eval(mu) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(G.hess(mu)(0, 0) == doctest::Approx(0.5 / 0.3 + 0.5 / 0.7).epsilon(1e-14));
  CHECK(G.metric_H(mu)(0, 0) == doctest::Approx(2 * 0.3 * 0.7).epsilon(1e-14));
}

TEST_CASE("gradient and Hessian against differences") {
  for (auto dims : std::vector<std::vector<int>>{{2}, {1, 1}, {1, 2}}) {
    auto P = standard_product(dims);
    for (const auto& G : {levi_kahler_potential(P, *P.grouping()), guillemin_potential(P)}) {
      for (const auto& mu : interior_points(P, 20, 4)) {
        const double h = 1e-6;
        Eigen::VectorXd g = G.grad(mu);
        for (int i = 0; i < P.dim(); ++i) {
          Eigen::VectorXd e = Eigen::VectorXd::Unit(P.dim(), i) * h;
          CHECK(g[i] == doctest::Approx((G.eval(mu + e) - G.eval(mu - e)) / (2 * h)).epsilon(1e-6));
        }
        Eigen::MatrixXd H = G.hess(mu), F = fd_hess(G, mu, 1e-4);
        CHECK((H - F).norm() / H.norm() < 1e-5);
      }
    }
  }
}

TEST_CASE("interior requirement") {
  auto P = standard_product({1, 1});
  auto G = guillemin_potential(P);
  Eigen::VectorXd mu(2);
  mu << 0, 0.5;
  CHECK_THROWS_AS(G.require_interior(mu), Error);
  try {
    G.eval(mu);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundaryProximity);
  }
}

TEST_CASE("LK potential needs a positive pair") {
  auto P = standard_product({1, 1});
  CHECK_THROWS_AS(levi_kahler_potential(P, Grouping{{{0, 2}, {1, 3}}}), Error);
}

TEST_CASE("infinity label closes each factor") {
  auto P = standard_product({2, 1});
  for (const auto& f : P.grouping()->factors) {
    auto Linf = infinity_label(P, f);
    AffineFunction sum = Linf;
    for (int s : f) sum = sum + P.facet(s);
    CHECK(std::abs(sum.a0) < 1e-15);
    CHECK(sum.a.norm() < 1e-15);
  }
}

TEST_CASE("boundary conditions") {
  for (auto dims : std::vector<std::vector<int>>{{1}, {2}, {1, 1}}) {
    auto P = standard_product(dims);
    auto rg = abreu_boundary_check(guillemin_potential(P));
    CHECK(rg.pass);
    auto rl = abreu_boundary_check(levi_kahler_potential(P, *P.grouping()));
    CHECK(rl.pass);
    CHECK(rl.positive_definite);
  }
  // a potential with the wrong facet weights fails the normal condition
  auto P = standard_product({1});
  SymplecticPotential bad({{P.facet(0), 1.0}, {P.facet(1), 0.5}}, P);
  CHECK_FALSE(abreu_boundary_check(bad).pass);
}

TEST_CASE("Kahler potential is the Legendre transform") {
  auto P = standard_product({1, 1});
  auto G = levi_kahler_potential(P, *P.grouping());
  Eigen::VectorXd p(2);
  p << 0.4, 0.55;
  KahlerPotential K(G, p);
  auto pts = interior_points(P, 20, 1);
  const double offset = K(pts[0]) - ((pts[0] - p).dot(G.grad(pts[0])) - G.eval(pts[0]));
  for (const auto& mu : pts) {
    double legendre = (mu - p).dot(G.grad(mu)) - G.eval(mu);
    CHECK(K(mu) - legendre == doctest::Approx(offset).epsilon(1e-12));
  }
  // interval at p = 1/2: K = -1/4 log(mu (1 - mu)) up to a constant
  auto I = standard_product({1});
  KahlerPotential KI(levi_kahler_potential(I, *I.grouping()), Eigen::VectorXd::Constant(1, 0.5));
  Eigen::VectorXd a(1), b(1);
  a << 0.2;
  b << 0.7;
  CHECK(KI(a) - KI(b) == doctest::Approx(-0.25 * std::log(0.2 * 0.8) + 0.25 * std::log(0.7 * 0.3)).epsilon(1e-13));
}
