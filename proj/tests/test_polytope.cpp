#include <doctest.h>

#include <random>

#include "lkq/error.hpp"
#include "lkq/linalg.hpp"
#include "lkq/polytope.hpp"

using namespace lkq;

namespace {

ExactAffine ex(const std::string& a0, std::vector<std::string> a) {
  ExactAffine f{parse_rational(a0), {}};
  for (const auto& s : a) f.a.push_back(parse_rational(s));
  return f;
}

LabelledPolytope square() {
  return LabelledPolytope(2, {ex("0", {"1", "0"}), ex("1", {"-1", "0"}), ex("0", {"0", "1"}), ex("1", {"0", "-1"})},
                          Grouping{{{0, 1}, {2, 3}}});
}

LabelledPolytope trapezoid() {
  return LabelledPolytope(2, {ex("0", {"1", "0"}), ex("1", {"-1", "0"}), ex("0", {"0", "1"}), ex("2", {"-1", "-1"})},
                          Grouping{{{0, 1}, {2, 3}}});
}

bool has_vertex(const LabelledPolytope& P, double x, double y) {
  for (const auto& v : P.vertices())
    if (std::abs(v.point[0] - x) < 1e-12 && std::abs(v.point[1] - y) < 1e-12) return true;
  return false;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Input;
}

}  // namespace

TEST_CASE("square face lattice") {
  auto L = face_lattice(square());
  CHECK(L.count(0) == 4);
  CHECK(L.count(1) == 4);
  CHECK(L.count(2) == 1);
  CHECK(L.faces.back().facets == 0);
}

TEST_CASE("2-simplex face lattice") {
  auto P = standard_product({2});
  auto L = face_lattice(P);
  CHECK(L.count(0) == 3);
  CHECK(L.count(1) == 3);
  CHECK(is_simple(P));
}

TEST_CASE("trapezoid vertices") {
  auto P = trapezoid();
  REQUIRE(P.vertices().size() == 4);
  CHECK(has_vertex(P, 0, 0));
  CHECK(has_vertex(P, 1, 0));
  CHECK(has_vertex(P, 1, 1));
  CHECK(has_vertex(P, 0, 2));
}

TEST_CASE("floating point input") {
  std::vector<AffineFunction> f{{0, Eigen::Vector2d(1, 0)}, {1, Eigen::Vector2d(-1, 0)},
                                {0, Eigen::Vector2d(0, 1)}, {2, Eigen::Vector2d(-1, -1)}};
  LabelledPolytope P(2, f);
  CHECK(P.vertices().size() == 4);
  CHECK(!P.exact());
  CHECK(has_vertex(P, 1, 1));
}

TEST_CASE("input rejection") {
  CHECK(kind_of([] { LabelledPolytope(2, {ex("0", {"1", "0"}), ex("0", {"0", "1"}), ex("1", {"0", "-1"})}); }) == ErrorKind::Unbounded);
  CHECK(kind_of([] { LabelledPolytope(2, {ex("0", {"1", "0"}), ex("1", {"-1", "0"}), ex("0", {"0", "1"})}); }) == ErrorKind::Unbounded);
  CHECK(kind_of([] {
          LabelledPolytope(2, {ex("0", {"1", "0"}), ex("1", {"-1", "0"}), ex("0", {"0", "1"}), ex("1", {"0", "-1"}), ex("2", {"0", "-2"})});
        }) == ErrorKind::Redundant);
  // a half-plane that only touches a vertex
  CHECK(kind_of([] {
          LabelledPolytope(2, {ex("0", {"1", "0"}), ex("1", {"-1", "0"}), ex("0", {"0", "1"}), ex("1", {"0", "-1"}), ex("2", {"-1", "-1"})});
        }) == ErrorKind::Redundant);
  CHECK(kind_of([] { LabelledPolytope(1, {ex("0", {"1"}), ex("-1", {"-1"})}); }) == ErrorKind::Empty);
  CHECK(kind_of([] { LabelledPolytope(1, {ex("0", {"1"}), ex("0", {"-1"})}); }) == ErrorKind::Empty);
}

TEST_CASE("square pyramid is not simple") {
  // apex (1/2,1/2,1) over the unit square
  auto P = LabelledPolytope(3, {ex("0", {"0", "0", "1"}), ex("0", {"2", "0", "-1"}), ex("2", {"-2", "0", "-1"}),
                                ex("0", {"0", "2", "-1"}), ex("2", {"0", "-2", "-1"})});
  CHECK(P.vertices().size() == 5);
  CHECK(!is_simple(P));
  CHECK(is_simple(square()));
}

TEST_CASE("product of simplices matching") {
  CHECK(matches_product_of_simplices(square(), Grouping{{{0, 1}, {2, 3}}}));
  CHECK(matches_product_of_simplices(standard_product({2}), Grouping{{{0, 1, 2}}}));
  // wrong pairing of opposite facets on the square
  CHECK(!matches_product_of_simplices(square(), Grouping{{{0, 2}, {1, 3}}}));
  for (auto dims : std::vector<std::vector<int>>{{1}, {2}, {3}, {4}, {1, 1}, {1, 2}, {2, 2}, {1, 3}, {1, 1, 1}, {1, 1, 2}, {1, 1, 1, 1}}) {
    auto P = standard_product(dims);
    CHECK(matches_product_of_simplices(P, *P.grouping()));
    CHECK(is_simple(P));
  }
}

TEST_CASE("pentagon grouping mismatch") {
  auto P = LabelledPolytope(2, {ex("0", {"1", "0"}), ex("0", {"0", "1"}), ex("2", {"-1", "0"}), ex("2", {"0", "-1"}), ex("3", {"-1", "-1"})});
  CHECK(kind_of([&] { matches_product_of_simplices(P, Grouping{{{0, 1}, {2, 3}}}); }) == ErrorKind::GroupingMismatch);
}

TEST_CASE("face lattice is recovered from its vertices") {
  auto P = trapezoid();
  auto L1 = face_lattice(P);
  std::vector<AffineFunction> f(P.facets());
  auto L2 = face_lattice(LabelledPolytope(2, f));
  REQUIRE(L1.faces.size() == L2.faces.size());
  for (std::size_t i = 0; i < L1.faces.size(); ++i) CHECK(L1.faces[i].facets == L2.faces[i].facets);
}

TEST_CASE("projective cube detection") {
  auto sq = square();
  auto w = detect_projective_cube(sq, *sq.grouping());
  REQUIRE(w);
  CHECK(w->exact->a0 == 1);
  CHECK(w->exact->a[0] == 0);
  CHECK(w->exact->a[1] == 0);

  auto tr = trapezoid();
  auto wt = detect_projective_cube(tr, *tr.grouping());
  REQUIRE(wt);
  // the pair {mu2, 2-mu1-mu2} meets on mu1 = 2; the other pair is parallel
  CHECK(wt->exact->a[1] == 0);
  CHECK(wt->exact->a0 == 2);
  CHECK(wt->exact->a[0] == -1);

  // rank condition: w, L_i0, L_i1 dependent
  auto lift = [](const ExactAffine& f) {
    std::vector<Rational> v{f.a0};
    v.insert(v.end(), f.a.begin(), f.a.end());
    return v;
  };
  for (const auto& fac : tr.grouping()->factors) {
    linalg::Mat<Rational> M{lift(*wt->exact), lift(tr.exact_facets()[fac[0]]), lift(tr.exact_facets()[fac[1]])};
    CHECK(linalg::rank(M) <= 2);
  }

  // 3-cube with a twisted pair: skew pencils
  auto skew = LabelledPolytope(3, {ex("0", {"1", "0", "0"}), ex("1", {"-1", "0", "0"}), ex("0", {"0", "1", "0"}),
                                   ex("1", {"0", "-1", "0"}), ex("0", {"0", "0", "1"}), ex("3", {"-1", "-1", "-2"})},
                               Grouping{{{0, 1}, {2, 3}, {4, 5}}});
  auto ws = detect_projective_cube(skew, *skew.grouping());
  CHECK(!ws);
  // two tilted pairs sharing a line at infinity still give a w
  auto shared = LabelledPolytope(3, {ex("0", {"1", "0", "0"}), ex("2", {"-1", "0", "-1"}), ex("0", {"0", "1", "0"}),
                                     ex("2", {"0", "-1", "-1"}), ex("0", {"0", "0", "1"}), ex("1", {"0", "0", "-1"})},
                                 Grouping{{{0, 1}, {2, 3}, {4, 5}}});
  auto wsh = detect_projective_cube(shared, *shared.grouping());
  REQUIRE(wsh);
  CHECK(wsh->exact->a[0] == 0);
  CHECK(wsh->exact->a[1] == 0);

  CHECK(kind_of([] { auto P = standard_product({2}); detect_projective_cube(P, *P.grouping()); }) == ErrorKind::NotCuboid);
}

TEST_CASE("stabilizer orders") {
  auto simplex = standard_product({2});
  CHECK(stabilizer_order(simplex, {0, 1}) == 1);
  CHECK(stabilizer_order(simplex, {1, 2}) == 1);
  auto interval = LabelledPolytope(1, {ex("0", {"1"}), ex("2", {"-2"})});
  CHECK(stabilizer_order(interval, {1}) == 2);
  CHECK(stabilizer_order(interval, {0}) == 1);
  auto diamond = LabelledPolytope(2, {ex("0", {"1", "1"}), ex("0", {"1", "-1"}), ex("2", {"-1", "1"}), ex("2", {"-1", "-1"})});
  CHECK(stabilizer_order(diamond, {0, 1}) == 2);
  auto frac = LabelledPolytope(1, {ex("0", {"1/2"}), ex("1", {"-1"})});
  CHECK(kind_of([&] { stabilizer_order(frac, {0}); }) == ErrorKind::NonIntegral);
}

TEST_CASE("stabilizer order is invariant under GL(m,Z)") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  auto base = LabelledPolytope(2, {ex("0", {"1", "0"}), ex("0", {"1", "3"}), ex("4", {"-1", "0"}), ex("4", {"-1", "-3"})});
  auto base_orders = std::vector<long long>{};
  for (const auto& v : base.vertices()) {
    std::vector<int> face;
    for (int s = 0; s < base.size(); ++s)
      if (v.active >> s & 1) face.push_back(s);
    base_orders.push_back(stabilizer_order(base, face));
  }
  int tried = 0;
  while (tried < 20) {
    int u[2][2] = {{entry(rng), entry(rng)}, {entry(rng), entry(rng)}};
    int det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    if (std::abs(det) != 1) continue;
    ++tried;
    // labels in new coordinates mu = U nu: a -> U^T a
    std::vector<ExactAffine> f;
    for (const auto& e : base.exact_facets())
      f.push_back({e.a0, {e.a[0] * u[0][0] + e.a[1] * u[1][0], e.a[0] * u[0][1] + e.a[1] * u[1][1]}});
    LabelledPolytope Q(2, f);
    REQUIRE(Q.vertices().size() == base.vertices().size());
    for (std::size_t k = 0; k < base.vertices().size(); ++k) {
      std::vector<int> face;
      for (int s = 0; s < base.size(); ++s)
        if (base.vertices()[k].active >> s & 1) face.push_back(s);
      CHECK(stabilizer_order(Q, face) == base_orders[k]);
    }
  }
}

TEST_CASE("triangulated volume") {
  CHECK(volume(square()) == doctest::Approx(1.0));
  CHECK(volume(trapezoid()) == doctest::Approx(1.5));
  CHECK(volume(standard_product({3})) == doctest::Approx(1.0 / 6));
  CHECK(volume(standard_product({1, 2})) == doctest::Approx(0.5));
}
