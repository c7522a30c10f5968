// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "lkq/calabi.hpp"
#include "lkq/cube.hpp"
#include "lkq/curvature.hpp"
#include "lkq/io.hpp"
#include "lkq/levi.hpp"
#include "lkq/potential.hpp"
#include "lkq/quad.hpp"
#include "lkq/sampling.hpp"
#include "lkq/sphere_lab.hpp"
#include "random_cube.hpp"

using namespace lkq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int k, const char* title, double budget, const std::function<Outcome()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget) {
    o.pass = false;
    o.detail += " over the time budget";
  }
  if (!o.pass) ++failures;
  std::printf("AC%-2d %s  %s  [%s] %.2fs (budget %.0fs)\n", k, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), dt,
              budget);
  std::fflush(stdout);
}

LabelledPolytope fixture(const std::string& name) { return read_polytope(std::string(LKQ_FIXTURES) + "/" + name + ".json"); }

const std::vector<std::string> kFive{"square", "trapezoid", "generic_quad", "cuboid3", "simplex_interval"};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// partitions of m into positive parts, non-increasing
void partitions(int m, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(m, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(m - p, p, cur, out);
    cur.pop_back();
  }
}

Outcome ac1() {
  std::vector<std::vector<int>> all;
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> cur;
    partitions(m, m, cur, all);
  }
  double worst = 0;
  for (const auto& dims : all) {
    auto P = standard_product(dims);
    auto S = setup_from_polytope(P, *P.grouping());
    for (const auto& s : sample(*P.grouping(), 10000, 0).points)
      worst = std::max(worst, (characteristic(s, S).array() - 0.5).abs().maxCoeff());
  }
  return {worst < 1e-12, std::to_string(all.size()) + " groupings x 1e4 samples, max |chi - 1/2| = " + fmt("%.2e", worst)};
}

Outcome ac2() {
  Outcome o;
  for (const auto& name : kFive) {
    auto P = fixture(name);
    auto rep = moment_image_test(P, *P.grouping(), sample(*P.grouping(), 100000, 0), false);
    o.pass = o.pass && rep.containment && rep.covered;
    o.detail += name + ": margin " + fmt("%.1e", rep.min_margin) + " coverage " + fmt("%.4f", rep.coverage) + "; ";
  }
  return o;
}

Outcome ac3() {
  double worst = 0;
  for (const auto& name : kFive) {
    auto P = fixture(name);
    auto G = levi_kahler_potential(P, *P.grouping());
    for (const auto& mu : interior_points(P, 1000, 1)) {
      const int m = P.dim();
      double dist = INFINITY;
      for (const auto& f : P.facets()) dist = std::min(dist, f(mu) / f.a.norm());
      const double h = 1e-3 * dist;
      Eigen::MatrixXd F(m, m);
      for (int j = 0; j < m; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(m, j) * h;
        F.col(j) = (8 * (G.grad(mu + e) - G.grad(mu - e)) - (G.grad(mu + 2 * e) - G.grad(mu - 2 * e))) / (12 * h);
      }
      Eigen::MatrixXd H = G.hess(mu);
      worst = std::max(worst, (H - F).norm() / H.norm());
    }
  }
  return {worst < 1e-5, "5 fixtures x 1e3 points, max relative error " + fmt("%.2e", worst)};
}

std::vector<CubeAnsatz> random_cubes() {
  std::mt19937_64 rng(2024);
  std::vector<CubeAnsatz> out;
  for (int m = 1; m <= 3; ++m)
    for (int k = 0; k < 3; ++k) out.push_back(random_cube(m, rng));
  return out;
}

Outcome ac4() {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (const auto& C : random_cubes()) {
    auto P = labels_from_cube(C);
    auto G = levi_kahler_potential(P, *P.grouping());
    for (int k = 0; k < 100; ++k) {
      auto xi = random_xi(C, rng);
      double s = abreu_scalar(G, C.mu_from_xi(xi)), c = scalar_closed_form(C, xi);
      worst = std::max(worst, std::abs(s - c) / std::max(1.0, std::abs(c)));
    }
  }
  return {worst < 1e-6, "9 cubes x 100 points, max relative error " + fmt("%.2e", worst)};
}

Outcome ac5() {
  double fit = 0, pointwise = 0;
  int count = 0;
  auto check_fit = [&](const LabelledPolytope& P, const AffineFunction& w) {
    auto G = levi_kahler_potential(P, *P.grouping());
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> v;
    for (const auto& mu : interior_grid(P, P.dim() == 3 ? 8 : 14)) {
      pts.push_back(mu);
      v.push_back(wp_scalar(G, mu, w, P.dim() + 2));
    }
    fit = std::max(fit, affine_fit(pts, v).max_residual);
    ++count;
  };
  for (const char* name : {"interval", "square", "trapezoid", "generic_quad", "cuboid3", "nonextremal_quad", "extremal_quad"}) {
    auto P = fixture(name);
    auto w = detect_projective_cube(P, *P.grouping());
    if (!w) return {false, std::string(name) + " is not detected as a projective cube"};
    check_fit(P, w->w);
  }
  std::mt19937_64 rng(5);
  for (const auto& C : random_cubes()) {
    auto P = labels_from_cube(C);
    auto w = detect_projective_cube(P, *P.grouping());
    if (!w) return {false, "random cube not detected"};
    check_fit(P, w->w);
    auto G = levi_kahler_potential(P, *P.grouping());
    for (int k = 0; k < 50; ++k) {
      auto xi = random_xi(C, rng);
      double a = wp_scalar(G, C.mu_from_xi(xi), cube_weight(C), C.m + 2), b = wp_scalar_closed_form(C, xi);
      pointwise = std::max(pointwise, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  }
  return {fit < 1e-8 && pointwise < 1e-6, std::to_string(count) + " cubes, max fit residual " + fmt("%.2e", fit) +
                                              ", max pointwise error vs -mu0 sum A'' " + fmt("%.2e", pointwise)};
}

Outcome ac6() {
  double worst = 0;
  for (auto [name, target] : std::vector<std::pair<std::string, double>>{{"interval", 4.0}, {"square", 8.0}}) {
    auto P = fixture(name);
    auto G = levi_kahler_potential(P, *P.grouping());
    for (const auto& mu : interior_grid(P, 25)) worst = std::max(worst, std::abs(abreu_scalar(G, mu) - target));
  }
  return {worst < 1e-8, "interval s = 4, square s = 8, max deviation " + fmt("%.2e", worst)};
}

Outcome ac7() {
  Outcome o;
  for (int n : {2, 3, 4}) {
    auto D = HFKGData::family(n);
    auto r = csc_certify(D, 4, 10);
    o.pass = o.pass && r.condition && r.constant && r.points == 1000;
    o.detail += "n=" + std::to_string(n) + ": 2c(3eta^2-2beta eta-1) = " + to_string(r.identity_s) + ", s = " +
                fmt("%.10g", r.s_mean) + " spread " + fmt("%.1e", r.spread) + "; ";
  }
  return o;
}

Outcome ac8() {
  LabelledPolytope I(1, std::vector<ExactAffine>{{0, {1}}, {1, {-1}}}, Grouping{{{0, 1}}});
  auto a = compose_check(FibrationData{I, {BaseFactor{I, {Rational(1)}, Rational(1)}}});
  auto b = compose_check(hfkg_fibration(HFKGData::family(2), 4));
  return {a.pass && b.pass, "trapezoid spread " + fmt("%.1e", a.spread) + ", CSC spread " + fmt("%.1e", b.spread)};
}

Outcome ac9() {
  Outcome o;
  for (const char* name : {"trapezoid", "generic_quad", "nonextremal_quad"}) {
    auto P = fixture(name);
    auto w = detect_projective_cube(P, *P.grouping())->w;
    AffineFunction h{0.0, Eigen::Vector2d(1, 0)};
    double fl = futaki(levi_kahler_potential(P, *P.grouping()), w, 4, h, 100000, 1);
    double fg = futaki(guillemin_potential(P), w, 4, h, 100000, 1);
    double rel = std::abs(fl - fg) / std::max(std::abs(fl), std::abs(fg));
    o.pass = o.pass && rel < 5e-3;
    o.detail += std::string(name) + ": LK " + fmt("%.6g", fl) + " Guillemin " + fmt("%.6g", fg) + " rel " + fmt("%.1e", rel) + "; ";
  }
  return o;
}

Outcome ac10() {
  auto prod = extremal_check(QuadData{0, 0, 0, 0, 1, 2});
  auto cal = extremal_check(QuadData{0, 1, 0, 0, 1, 2});
  bool ok = prod.cls.tag == AmbitoricTag::Product && prod.numeric_extremal && prod.closed_form_extremal &&
            *prod.closed_form_extremal && cal.cls.tag == AmbitoricTag::Calabi && !cal.numeric_extremal &&
            cal.closed_form_extremal && !*cal.closed_form_extremal;
  return {ok, "C=0: " + to_string(prod.cls.tag) + " residual " + fmt("%.1e", prod.fit_residual) +
                  "; Calabi (gamma=1, c=(1,2)): closed form " +
                  (cal.closed_form_extremal ? (*cal.closed_form_extremal ? "extremal" : "not extremal") : "n/a") +
                  ", numeric residual " + fmt("%.3g", cal.fit_residual)};
}

}  // namespace

int main() {
  run(1, "canonical pair has chi = 1/2", 5, ac1);
  run(2, "moment image containment and coverage", 60, ac2);
  run(3, "Hessian against finite differences", 10, ac3);
  run(4, "Abreu scalar vs cube closed form", 60, ac4);
  run(5, "(w, m+2) extremality of projective cubes", 60, ac5);
  run(6, "round benchmarks", 10, ac6);
  run(7, "CSC certification n = 2, 3, 4", 120, ac7);
  run(8, "composition identity", 30, ac8);
  run(9, "Futaki invariant independent of the metric", 120, ac9);
  run(10, "quadrilateral classification and extremality", 60, ac10);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
