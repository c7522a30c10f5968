#include <doctest.h>

#include "lkq/error.hpp"
#include "lkq/io.hpp"

using namespace lkq;
using nlohmann::json;

TEST_CASE("numbers are read exactly") {
  CHECK(json_rational(json::parse("0.1")) == Rational(1, 10));
  CHECK(json_rational(json::parse("-3")) == -3);
  CHECK(json_rational(json::parse("\"2/6\"")) == Rational(1, 3));
  CHECK(json_rational(json::parse("\"1.5e-1\"")) == Rational(3, 20));
  CHECK_THROWS_AS(json_rational(json::parse("\"1/0\"")), Error);
  CHECK_THROWS_AS(json_rational(json::parse("\"abc\"")), Error);
  CHECK_THROWS_AS(json_rational(json::parse("true")), Error);
}

TEST_CASE("fixtures load") {
  for (const char* name : {"interval", "square", "trapezoid", "generic_quad", "cuboid3", "simplex_interval",
                           "nonextremal_quad", "extremal_quad"}) {
    auto P = read_polytope(std::string(LKQ_FIXTURES) + "/" + name + ".json");
    CHECK(P.exact());
    REQUIRE(P.grouping());
    CHECK(matches_product_of_simplices(P, *P.grouping()));
  }
}

TEST_CASE("round trip") {
  auto P = read_polytope(std::string(LKQ_FIXTURES) + "/generic_quad.json");
  auto Q = polytope_from_json(polytope_to_json(P));
  REQUIRE(Q.size() == P.size());
  for (int s = 0; s < P.size(); ++s) {
    CHECK(Q.exact_facets()[s].a0 == P.exact_facets()[s].a0);
    CHECK(Q.exact_facets()[s].a == P.exact_facets()[s].a);
  }
  CHECK(Q.grouping()->factors == P.grouping()->factors);
}

TEST_CASE("document errors") {
  auto bad = [](const char* text) {
    try {
      polytope_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::SelfCheckFailure;
  };
  CHECK(bad(R"({"facets": []})") == ErrorKind::Input);
  CHECK(bad(R"({"dim": 1, "facets": [{"a0": 0, "a": [1, 2]}]})") == ErrorKind::Input);
  CHECK(bad(R"({"dim": 1, "facets": [{"a0": 0, "a": [1], "group": 0}, {"a0": 1, "a": [-1]}]})") ==
        ErrorKind::GroupingMismatch);
  CHECK(bad(R"({"dim": 1, "facets": [{"a0": 0, "a": [1], "group": 0, "index": 0}, {"a0": 1, "a": [-1], "group": 0, "index": 0}]})") ==
        ErrorKind::GroupingMismatch);
  CHECK(bad(R"({"dim": 1, "facets": [{"a0": 0, "a": [1], "group": 0}, {"a0": 1, "a": [-1], "group": 0}], "groups": [{"id": 0, "size": 3}]})") ==
        ErrorKind::GroupingMismatch);
  // index order decides the position inside a group
  auto P = polytope_from_json(json::parse(
      R"({"dim": 1, "facets": [{"a0": 1, "a": [-1], "group": 0, "index": 1}, {"a0": 0, "a": [1], "group": 0, "index": 0}]})"));
  CHECK(P.grouping()->factors[0] == std::vector<int>{1, 0});
}
