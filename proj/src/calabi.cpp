#include "lkq/calabi.hpp"

#include <algorithm>
#include <cmath>

#include "lkq/curvature.hpp"
#include "lkq/error.hpp"
#include "lkq/parallel.hpp"
#include "lkq/potential.hpp"
#include "lkq/sampling.hpp"

namespace lkq {

namespace {

bool all_exact(const FibrationData& data) {
  if (!data.fibre.exact()) return false;
  for (const auto& b : data.base)
    if (!b.polytope.exact()) return false;
  return true;
}

void check_input(const FibrationData& data) {
  if (!data.fibre.grouping()) throw Error(ErrorKind::Input, "fibre polytope needs a grouping");
  const int lv = data.fibre.dim();
  for (const auto& b : data.base) {
    if (!b.polytope.grouping()) throw Error(ErrorKind::Input, "base polytope needs a grouping");
    if (static_cast<int>(b.p.size()) != lv) throw Error(ErrorKind::Input, "p_j has the wrong length");
  }
}

}  // namespace

AffineFunction fibre_scaling(const FibrationData& data, int j) {
  const auto& b = data.base.at(j);
  AffineFunction D{to_double(b.c), Eigen::VectorXd(data.fibre.dim())};
  for (int i = 0; i < data.fibre.dim(); ++i) D.a[i] = to_double(b.p[i]);
  return D;
}

LabelledPolytope hat_polytope(const FibrationData& data) {
  check_input(data);
  const int lv = data.fibre.dim();
  int total = lv;
  for (const auto& b : data.base) total += b.polytope.dim();

  // the scaling is affine, so positivity at the vertices is enough
  for (int j = 0; j < static_cast<int>(data.base.size()); ++j) {
    const auto& b = data.base[j];
    if (data.fibre.exact()) {
      for (const auto& v : data.fibre.exact_vertices()) {
        Rational D = b.c;
        for (int i = 0; i < lv; ++i) D += b.p[i] * v[i];
        if (D <= 0) throw Error(ErrorKind::PositivityFailure, "<p, x> + c is not positive on the fibre");
      }
    } else {
      auto D = fibre_scaling(data, j);
      for (const auto& v : data.fibre.vertices())
        if (!(D(v.point) > kCombTol)) throw Error(ErrorKind::PositivityFailure, "<p, x> + c is not positive on the fibre");
    }
  }

  Grouping g = *data.fibre.grouping();
  int offset = data.fibre.size();
  for (const auto& b : data.base) {
    for (const auto& f : b.polytope.grouping()->factors) {
      std::vector<int> shifted;
      for (int s : f) shifted.push_back(s + offset);
      g.factors.push_back(shifted);
    }
    offset += b.polytope.size();
  }

  if (all_exact(data)) {
    std::vector<ExactAffine> labels;
    for (const auto& f : data.fibre.exact_facets()) {
      ExactAffine L{f.a0, std::vector<Rational>(total, Rational(0))};
      for (int i = 0; i < lv; ++i) L.a[i] = f.a[i];
      labels.push_back(L);
    }
    int col = lv;
    for (const auto& b : data.base) {
      for (const auto& f : b.polytope.exact_facets()) {
        ExactAffine L{f.a0 * b.c, std::vector<Rational>(total, Rational(0))};
        for (int i = 0; i < lv; ++i) L.a[i] = f.a0 * b.p[i];
        for (int k = 0; k < b.polytope.dim(); ++k) L.a[col + k] = f.a[k];
        labels.push_back(L);
      }
      col += b.polytope.dim();
    }
    return LabelledPolytope(total, labels, g);
  }

  std::vector<AffineFunction> labels;
  for (const auto& f : data.fibre.facets()) {
    AffineFunction L{f.a0, Eigen::VectorXd::Zero(total)};
    L.a.head(lv) = f.a;
    labels.push_back(L);
  }
  int col = lv;
  for (int j = 0; j < static_cast<int>(data.base.size()); ++j) {
    const auto& b = data.base[j];
    auto D = fibre_scaling(data, j);
    for (const auto& f : b.polytope.facets()) {
      AffineFunction L{f.a0 * D.a0, Eigen::VectorXd::Zero(total)};
      L.a.head(lv) = f.a0 * D.a;
      L.a.segment(col, b.polytope.dim()) = f.a;
      labels.push_back(L);
    }
    col += b.polytope.dim();
  }
  return LabelledPolytope(total, labels, g);
}

ComposeReport compose_check(const FibrationData& data, int n, std::uint64_t seed) {
  check_input(data);
  if (!matches_product_of_simplices(data.fibre, *data.fibre.grouping()))
    throw Error(ErrorKind::GroupingMismatch, "fibre is not a product of simplices");
  for (const auto& b : data.base)
    if (!matches_product_of_simplices(b.polytope, *b.polytope.grouping()))
      throw Error(ErrorKind::GroupingMismatch, "base factor is not a product of simplices");

  auto hat = hat_polytope(data);
  auto GM = levi_kahler_potential(hat, *hat.grouping());
  auto GV = levi_kahler_potential(data.fibre, *data.fibre.grouping());
  std::vector<SymplecticPotential> GB;
  for (const auto& b : data.base) GB.push_back(levi_kahler_potential(b.polytope, *b.polytope.grouping()));

  const int lv = data.fibre.dim();
  std::vector<double> diff;
  double scale = 1.0;
  for (const auto& pt : interior_points(hat, n, seed)) {
    Eigen::VectorXd x = pt.head(lv);
    double composed = GV.eval(x);
    int col = lv;
    for (int j = 0; j < static_cast<int>(data.base.size()); ++j) {
      const int dj = data.base[j].polytope.dim();
      double D = fibre_scaling(data, j)(x);
      Eigen::VectorXd y = pt.segment(col, dj) / D;
      composed += D * GB[j].eval(y);
      col += dj;
    }
    double gm = GM.eval(pt);
    scale = std::max(scale, std::abs(gm));
    diff.push_back(gm - composed);
  }

  ComposeReport rep;
  rep.points = static_cast<int>(diff.size());
  auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
  rep.spread = *hi - *lo;
  double sum = 0;
  for (double d : diff) sum += d;
  rep.offset = sum / rep.points;
  rep.pass = rep.spread < 1e-9 * scale;
  if (!rep.pass)
    throw Error(ErrorKind::IdentityFailure, "composed potential differs from the LK potential by a non-constant (spread " +
                                                std::to_string(rep.spread) + ")");
  return rep;
}

HFKGData HFKGData::family(int n) {
  if (n < 2) throw Error(ErrorKind::Input, "family index must be at least 2");
  return HFKGData{Rational(1, n), Rational(-n), Rational(2, 3 * n * n + 1)};
}

HFKGData HFKGData::with_scalar(const Rational& beta, const Rational& eta, const Rational& s) {
  Rational k = 2 * (3 * eta * eta - 2 * beta * eta - 1);
  if (k == 0) throw Error(ErrorKind::Input, "eta is a root of 3x^2 - 2 beta x - 1");
  return HFKGData{beta, eta, s / k};
}

Rational HFKGData::Q(const Rational& x) const { return -c * (x * x - 1) * (x - beta); }

Rational HFKGData::F(const Rational& x) const { return Q(x) * (x - eta); }

Rational HFKGData::scalar() const { return 2 * c * (3 * eta * eta - 2 * beta * eta - 1); }

void HFKGData::validate() const {
  if (!(beta > -1 && beta < 1)) throw Error(ErrorKind::Input, "need |beta| < 1");
  if (!(eta < -1)) throw Error(ErrorKind::Input, "need eta < -1");
  if (!(c > 0)) throw Error(ErrorKind::Input, "need c > 0");
}

LabelledPolytope hfkg_fibre(const HFKGData& data) {
  data.validate();
  const Rational& b = data.beta;
  // c_r (F/p_c)'(r) = 2 at r = -1, 1, beta
  auto dQ = [&](const Rational& x) { return -data.c * (2 * x * (x - b) + (x * x - 1)); };
  Rational cm = 2 / dQ(Rational(-1)), cp = 2 / dQ(Rational(1)), cb = 2 / dQ(b);
  std::vector<ExactAffine> labels{
      {-cm, {-cm, -cm}},
      {-cp, {cp, -cp}},
      {-cb * b * b, {cb * b, -cb}},
  };

  // labels must be nonnegative on the image of [-1, beta] x [beta, 1]
  const int k = 8;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      Rational x1 = -1 + (b + 1) * Rational(i, k);
      Rational x2 = b + (1 - b) * Rational(j, k);
      std::vector<Rational> sigma{x1 + x2, x1 * x2};
      for (const auto& L : labels)
        if (L(sigma) < 0) throw Error(ErrorKind::SignFailure, "fibre label negative on the orthotoric box");
    }
  for (const Rational& x : {Rational((b - 1) / 2), Rational((b + 1) / 2)})
    if ((x < b ? -1 : 1) * data.Q(x) <= 0) throw Error(ErrorKind::SignFailure, "F / p_c has the wrong sign");

  return LabelledPolytope(2, labels, Grouping{{{0, 1, 2}}});
}

FibrationData hfkg_fibration(const HFKGData& data, const Rational& s) {
  if (!(s > 0)) throw Error(ErrorKind::Input, "base scalar curvature must be positive");
  // interval [0, 4/s] with labels y, 4/s - y has scalar curvature s
  Rational len = 4 / s;
  LabelledPolytope base(1, std::vector<ExactAffine>{{0, {1}}, {len, {-1}}}, Grouping{{{0, 1}}});
  return FibrationData{hfkg_fibre(data), {BaseFactor{base, {-data.eta, Rational(1)}, data.eta * data.eta}}};
}

CSCReport csc_certify(const HFKGData& data, const Rational& s, int grid, int threads) {
  if (!(s > 0)) throw Error(ErrorKind::Input, "base scalar curvature must be positive");
  data.validate();
  CSCReport rep;
  rep.identity_s = data.scalar();
  rep.condition = rep.identity_s == s;
  if (!rep.condition)
    throw Error(ErrorKind::ConditionFailure, "2c(3 eta^2 - 2 beta eta - 1) = " + to_string(rep.identity_s) +
                                                 " differs from s = " + to_string(s));

  auto fib = hfkg_fibration(data, s);
  auto hat = hat_polytope(fib);
  auto G = levi_kahler_potential(hat, *hat.grouping());

  const double b = to_double(data.beta), eta = to_double(data.eta), len = 4.0 / to_double(s);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        double x1 = -1 + (b + 1) * (i + 0.5) / grid;
        double x2 = b + (1 - b) * (j + 0.5) / grid;
        double z = len * (k + 0.5) / grid;
        double D = (eta - x1) * (eta - x2);
        pts.push_back(Eigen::Vector3d(x1 + x2, x1 * x2, z * D));
      }
  std::vector<double> vals(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) { vals[i] = abreu_scalar(G, pts[i]); });

  rep.points = static_cast<int>(vals.size());
  auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  rep.s_min = *lo;
  rep.s_max = *hi;
  double sum = 0;
  for (double v : vals) sum += v;
  rep.s_mean = sum / rep.points;
  rep.spread = (rep.s_max - rep.s_min) / std::max(std::abs(rep.s_max), std::abs(rep.s_min));
  rep.constant = rep.spread < 1e-5;
  if (!rep.constant)
    throw Error(ErrorKind::NonConstantScalar, "scalar curvature varies by " + std::to_string(rep.spread));
  return rep;
}

}  // namespace lkq
