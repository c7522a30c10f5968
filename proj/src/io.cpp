#include "lkq/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "lkq/error.hpp"

namespace lkq {

using nlohmann::json;

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  if (v.is_number_float()) {
    double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorKind::Input, "non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return parse_rational(std::string_view(buf, res.ptr - buf));
  }
  throw Error(ErrorKind::Input, "expected a number or a \"p/q\" string, got " + v.dump());
}

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorKind::Input, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int int_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::Input, std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

LabelledPolytope polytope_from_json(const json& doc) {
  const int dim = int_field(doc, "dim");
  if (dim < 1) throw Error(ErrorKind::Input, "dim must be positive");
  const auto& facets = field(doc, "facets");
  if (!facets.is_array() || facets.empty()) throw Error(ErrorKind::Input, "facets must be a nonempty array");

  std::vector<ExactAffine> labels;
  std::map<int, std::map<int, int>> members;  // group id -> index -> facet
  bool grouped = false, ungrouped = false;
  for (const auto& f : facets) {
    ExactAffine L;
    L.a0 = json_rational(field(f, "a0"));
    const auto& a = field(f, "a");
    if (!a.is_array() || static_cast<int>(a.size()) != dim)
      throw Error(ErrorKind::Input, "facet normal must have " + std::to_string(dim) + " entries");
    for (const auto& x : a) L.a.push_back(json_rational(x));
    const int s = static_cast<int>(labels.size());
    labels.push_back(std::move(L));
    if (f.contains("group")) {
      grouped = true;
      int gid = int_field(f, "group");
      int idx = f.contains("index") ? int_field(f, "index") : static_cast<int>(members[gid].size());
      if (!members[gid].emplace(idx, s).second)
        throw Error(ErrorKind::GroupingMismatch, "duplicate index " + std::to_string(idx) + " in group " + std::to_string(gid));
    } else {
      ungrouped = true;
    }
  }
  if (grouped && ungrouped) throw Error(ErrorKind::GroupingMismatch, "either every facet or no facet has a group");

  std::optional<Grouping> grouping;
  if (grouped) {
    std::vector<int> order;
    if (doc.contains("groups")) {
      for (const auto& gdesc : doc.at("groups")) {
        int id = int_field(gdesc, "id"), size = int_field(gdesc, "size");
        if (!members.count(id)) throw Error(ErrorKind::GroupingMismatch, "group " + std::to_string(id) + " has no facets");
        if (static_cast<int>(members[id].size()) != size)
          throw Error(ErrorKind::GroupingMismatch, "group " + std::to_string(id) + " declares size " +
                                                       std::to_string(size) + " but has " +
                                                       std::to_string(members[id].size()) + " facets");
        if (std::find(order.begin(), order.end(), id) != order.end())
          throw Error(ErrorKind::GroupingMismatch, "group " + std::to_string(id) + " listed twice");
        order.push_back(id);
      }
      if (order.size() != members.size()) throw Error(ErrorKind::GroupingMismatch, "facets use an undeclared group");
    } else {
      for (const auto& [id, _] : members) order.push_back(id);
    }
    Grouping g;
    for (int id : order) {
      std::vector<int> f;
      int expect = 0;
      for (const auto& [idx, s] : members[id]) {
        if (idx != expect++) throw Error(ErrorKind::GroupingMismatch, "indices in a group must be 0..size-1");
        f.push_back(s);
      }
      g.factors.push_back(f);
    }
    grouping = g;
  }
  return LabelledPolytope(dim, std::move(labels), grouping);
}

LabelledPolytope read_polytope(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, path + ": " + e.what());
  }
  return polytope_from_json(doc);
}

json polytope_to_json(const LabelledPolytope& P) {
  json doc;
  doc["dim"] = P.dim();
  std::vector<std::pair<int, int>> gi(P.size(), {-1, -1});
  if (P.grouping())
    for (int i = 0; i < P.grouping()->ell(); ++i) {
      const auto& f = P.grouping()->factors[i];
      for (int r = 0; r < static_cast<int>(f.size()); ++r) gi[f[r]] = {i, r};
    }
  json facets = json::array();
  for (int s = 0; s < P.size(); ++s) {
    json f;
    if (P.exact()) {
      const auto& L = P.exact_facets()[s];
      f["a0"] = to_string(L.a0);
      json a = json::array();
      for (const auto& x : L.a) a.push_back(to_string(x));
      f["a"] = a;
    } else {
      f["a0"] = P.facet(s).a0;
      f["a"] = std::vector<double>(P.facet(s).a.data(), P.facet(s).a.data() + P.dim());
    }
    if (gi[s].first >= 0) {
      f["group"] = gi[s].first;
      f["index"] = gi[s].second;
    }
    facets.push_back(f);
  }
  doc["facets"] = facets;
  if (P.grouping()) {
    json groups = json::array();
    for (int i = 0; i < P.grouping()->ell(); ++i)
      groups.push_back({{"id", i}, {"size", P.grouping()->factors[i].size()}});
    doc["groups"] = groups;
  }
  return doc;
}

}  // namespace lkq
