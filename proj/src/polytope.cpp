#include "lkq/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "lkq/error.hpp"
#include "lkq/lattice.hpp"
#include "lkq/linalg.hpp"

namespace lkq {

using linalg::Mat;

AffineFunction ExactAffine::to_double() const {
  AffineFunction f;
  f.a0 = lkq::to_double(a0);
  f.a.resize(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) f.a[static_cast<int>(i)] = lkq::to_double(a[i]);
  return f;
}

Rational ExactAffine::operator()(const std::vector<Rational>& mu) const {
  Rational v = a0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * mu[i];
  return v;
}

int Grouping::total() const {
  int n = 0;
  for (const auto& f : factors) n += static_cast<int>(f.size());
  return n;
}

std::vector<int> Grouping::factor_of(int n) const {
  std::vector<int> out(n, -1);
  if (total() != n) throw Error(ErrorKind::GroupingMismatch, "grouping covers " + std::to_string(total()) + " indices, expected " + std::to_string(n));
  for (int i = 0; i < ell(); ++i) {
    if (factors[i].empty()) throw Error(ErrorKind::GroupingMismatch, "empty factor");
    for (int s : factors[i]) {
      if (s < 0 || s >= n || out[s] >= 0) throw Error(ErrorKind::GroupingMismatch, "grouping is not a partition of the facets");
      out[s] = i;
    }
  }
  return out;
}

std::vector<int> Grouping::dims() const {
  std::vector<int> d;
  for (const auto& f : factors) d.push_back(static_cast<int>(f.size()) - 1);
  return d;
}

int FaceLattice::count(int dim) const {
  return static_cast<int>(std::count_if(faces.begin(), faces.end(), [dim](const Face& f) { return f.dim == dim; }));
}

namespace {

// Label data over a scalar type; tolerances are ignored for Rational.
template <class T>
struct LabelSet {
  int m;
  std::vector<T> a0;
  std::vector<std::vector<T>> a;
  std::vector<double> norm;  // |a_s|, used to scale tolerances

  int n() const { return static_cast<int>(a0.size()); }

  T value(int s, const std::vector<T>& mu) const {
    T v = a0[s];
    for (int j = 0; j < m; ++j) v += a[s][j] * mu[j];
    return v;
  }

  double slack(const std::vector<T>& mu) const {
    double r = 1.0;
    for (const auto& x : mu) r = std::max(r, linalg::magnitude(x));
    return r;
  }

  bool nonneg(int s, const std::vector<T>& mu) const {
    T v = value(s, mu);
    if constexpr (std::is_same_v<T, Rational>) return v >= 0;
    else return v >= -kCombTol * norm[s] * slack(mu);
  }

  bool active(int s, const std::vector<T>& mu) const {
    T v = value(s, mu);
    if constexpr (std::is_same_v<T, Rational>) return v == 0;
    else return std::abs(v) <= kCombTol * norm[s] * slack(mu);
  }
};

template <class T>
int affine_rank(const std::vector<std::vector<T>>& pts) {
  if (pts.size() <= 1) return 0;
  Mat<T> M;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<T> row(pts[i].size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = pts[i][j] - pts[0][j];
    M.push_back(std::move(row));
  }
  return linalg::rank(M, kCombTol);
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class T>
struct Enumeration {
  std::vector<std::vector<T>> points;
  std::vector<std::uint64_t> masks;
};

template <class T>
Enumeration<T> validate_labels(const LabelSet<T>& L) {
  const int m = L.m, n = L.n();
  if (m < 1) throw Error(ErrorKind::Input, "dimension must be positive");
  if (n > 64) throw Error(ErrorKind::Input, "at most 64 facets are supported");
  if (n < m + 1) throw Error(ErrorKind::Unbounded, "fewer than m+1 facets");

  Mat<T> normals(L.a.begin(), L.a.end());
  if (linalg::rank(normals, kCombTol) < m) throw Error(ErrorKind::Unbounded, "normals do not span; the region contains a line");

  // extreme rays of the recession cone {d : <a_s, d> >= 0}
  for_each_subset(n, m - 1, [&](const std::vector<int>& sub) {
    Mat<T> rows;
    for (int s : sub) rows.push_back(L.a[s]);
    auto ns = linalg::nullspace(rows, m, kCombTol);
    if (ns.size() != 1) return;
    for (int sign : {1, -1}) {
      bool ray = true;
      for (int s = 0; s < n && ray; ++s) {
        T dot(0);
        for (int j = 0; j < m; ++j) dot += L.a[s][j] * ns[0][j];
        if (sign < 0) dot = -dot;
        if constexpr (std::is_same_v<T, Rational>) ray = dot >= 0;
        else {
          double dn = 0;
          for (const auto& x : ns[0]) dn = std::max(dn, std::abs(x));
          ray = dot >= -kCombTol * L.norm[s] * dn;
        }
      }
      if (ray) throw Error(ErrorKind::Unbounded, "recession ray found");
    }
  });

  Enumeration<T> out;
  std::set<std::uint64_t> seen;
  for_each_subset(n, m, [&](const std::vector<int>& sub) {
    Mat<T> A;
    std::vector<T> b;
    for (int s : sub) {
      A.push_back(L.a[s]);
      b.push_back(-L.a0[s]);
    }
    auto x = linalg::solve(A, b, kCombTol);
    if (!x) return;
    for (int s = 0; s < n; ++s)
      if (!L.nonneg(s, *x)) return;
    std::uint64_t mask = 0;
    for (int s = 0; s < n; ++s)
      if (L.active(s, *x)) mask |= std::uint64_t{1} << s;
    if (seen.insert(mask).second) {
      out.points.push_back(*x);
      out.masks.push_back(mask);
    }
  });
  if (out.points.empty()) throw Error(ErrorKind::Empty, "no vertices; the polytope is empty");
  if (affine_rank(out.points) < m) throw Error(ErrorKind::Empty, "polytope has empty interior");

  std::vector<std::uint64_t> incidence(n, 0);
  for (int s = 0; s < n; ++s) {
    std::vector<std::vector<T>> on;
    for (std::size_t v = 0; v < out.points.size(); ++v)
      if (out.masks[v] >> s & 1) {
        on.push_back(out.points[v]);
        incidence[s] |= std::uint64_t{1} << v;
      }
    if (on.empty() || affine_rank(on) < m - 1)
      throw Error(ErrorKind::Redundant, "facet " + std::to_string(s) + " does not support a facet of the polytope");
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (incidence[s] == incidence[t])
        throw Error(ErrorKind::Redundant, "facets " + std::to_string(s) + " and " + std::to_string(t) + " define the same face");
  return out;
}

template <class T>
LabelSet<T> make_labels(int m, const std::vector<T>& a0, const std::vector<std::vector<T>>& a) {
  LabelSet<T> L{m, a0, a, {}};
  for (const auto& row : a) {
    double nr = 0;
    for (const auto& x : row) nr += linalg::magnitude(x) * linalg::magnitude(x);
    L.norm.push_back(std::max(std::sqrt(nr), 1e-300));
  }
  return L;
}

}  // namespace

LabelledPolytope::LabelledPolytope(int dim, std::vector<AffineFunction> facets, std::optional<Grouping> grouping)
    : dim_(dim), facets_(std::move(facets)), grouping_(std::move(grouping)) {
  validate();
}

LabelledPolytope::LabelledPolytope(int dim, std::vector<ExactAffine> facets, std::optional<Grouping> grouping)
    : dim_(dim), exact_(std::move(facets)), grouping_(std::move(grouping)) {
  for (const auto& f : *exact_) facets_.push_back(f.to_double());
  validate();
}

void LabelledPolytope::validate() {
  for (const auto& f : facets_) {
    if (f.a.size() != dim_) throw Error(ErrorKind::Input, "facet normal has wrong length");
    if (!std::isfinite(f.a0) || !f.a.allFinite()) throw Error(ErrorKind::Input, "non-finite facet data");
  }
  if (grouping_) grouping_->factor_of(size());

  if (exact_) {
    std::vector<Rational> a0;
    std::vector<std::vector<Rational>> a;
    for (const auto& f : *exact_) {
      a0.push_back(f.a0);
      a.push_back(f.a);
    }
    auto e = validate_labels(make_labels(dim_, a0, a));
    exact_vertices_ = e.points;
    for (std::size_t v = 0; v < e.points.size(); ++v) {
      Eigen::VectorXd p(dim_);
      for (int j = 0; j < dim_; ++j) p[j] = to_double(e.points[v][j]);
      vertices_.push_back({p, e.masks[v]});
    }
  } else {
    std::vector<double> a0;
    std::vector<std::vector<double>> a;
    for (const auto& f : facets_) {
      a0.push_back(f.a0);
      a.emplace_back(f.a.data(), f.a.data() + dim_);
    }
    auto e = validate_labels(make_labels(dim_, a0, a));
    for (std::size_t v = 0; v < e.points.size(); ++v)
      vertices_.push_back({Eigen::Map<Eigen::VectorXd>(e.points[v].data(), dim_), e.masks[v]});
  }
}

Eigen::VectorXd LabelledPolytope::barycenter() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim_);
  for (const auto& v : vertices_) c += v.point;
  return c / static_cast<double>(vertices_.size());
}

double LabelledPolytope::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      d = std::max(d, (vertices_[i].point - vertices_[j].point).norm());
  return d;
}

double LabelledPolytope::min_label(const Eigen::VectorXd& mu) const {
  double r = INFINITY;
  for (const auto& f : facets_) r = std::min(r, f(mu));
  return r;
}

bool LabelledPolytope::contains(const Eigen::VectorXd& mu, double tol) const {
  return min_label(mu) >= -tol;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> LabelledPolytope::bounding_box() const {
  Eigen::VectorXd lo = vertices_[0].point, hi = vertices_[0].point;
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  return {lo, hi};
}

FaceLattice face_lattice(const LabelledPolytope& P) {
  FaceLattice L;
  L.vertices = P.vertices();
  std::set<std::uint64_t> masks;
  for (const auto& v : L.vertices) masks.insert(v.active);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::uint64_t> cur(masks.begin(), masks.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (masks.insert(cur[i] & cur[j]).second) grew = true;
  }
  for (auto mask : masks) {
    Face f;
    f.facets = mask;
    std::vector<std::vector<double>> pts;
    for (std::size_t v = 0; v < L.vertices.size(); ++v)
      if ((L.vertices[v].active & mask) == mask) {
        f.vertices.push_back(static_cast<int>(v));
        const auto& p = L.vertices[v].point;
        pts.emplace_back(p.data(), p.data() + p.size());
      }
    if (P.exact()) {
      std::vector<std::vector<Rational>> ex;
      for (int v : f.vertices) ex.push_back(P.exact_vertices()[v]);
      f.dim = affine_rank(ex);
    } else {
      f.dim = affine_rank(pts);
    }
    L.faces.push_back(std::move(f));
  }
  std::sort(L.faces.begin(), L.faces.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.facets < b.facets;
  });
  return L;
}

bool is_simple(const LabelledPolytope& P) {
  const int m = P.dim();
  for (const auto& v : P.vertices()) {
    if (__builtin_popcountll(v.active) != m) return false;
    Mat<double> rows;
    for (int s = 0; s < P.size(); ++s)
      if (v.active >> s & 1) rows.emplace_back(P.facet(s).a.data(), P.facet(s).a.data() + m);
    if (linalg::rank(rows, kCombTol) != m) return false;
  }
  return true;
}

namespace {

void check_grouping_sizes(const LabelledPolytope& P, const Grouping& g) {
  g.factor_of(P.size());
  int m = 0;
  for (int d : g.dims()) m += d;
  if (m != P.dim()) throw Error(ErrorKind::GroupingMismatch, "factor dimensions sum to " + std::to_string(m) + ", polytope has dimension " + std::to_string(P.dim()));
}

}  // namespace

bool matches_product_of_simplices(const LabelledPolytope& P, const Grouping& g) {
  check_grouping_sizes(P, g);
  const std::uint64_t all = P.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << P.size()) - 1;
  std::set<std::uint64_t> expected{all};
  for (const auto& factor : g.factors) {
    std::set<std::uint64_t> next;
    for (auto mask : expected)
      for (int s : factor) next.insert(mask & ~(std::uint64_t{1} << s));
    expected = std::move(next);
  }
  std::set<std::uint64_t> actual;
  for (const auto& v : P.vertices()) actual.insert(v.active);
  return actual == expected;
}

namespace {

template <class T>
std::optional<std::vector<T>> pencil_intersection(const std::vector<std::vector<T>>& lift, const Grouping& g, int m) {
  if (m == 1) {
    std::vector<T> w(2);
    for (int j = 0; j < 2; ++j) w[j] = lift[g.factors[0][0]][j] + lift[g.factors[0][1]][j];
    return w;
  }
  Mat<T> stacked;
  for (const auto& f : g.factors) {
    Mat<T> span{lift[f[0]], lift[f[1]]};
    for (auto& c : linalg::nullspace(span, m + 1, kCombTol)) stacked.push_back(c);
  }
  auto w = linalg::nullspace(stacked, m + 1, kCombTol);
  if (w.empty()) return std::nullopt;
  if (w.size() > 1) throw Error(ErrorKind::Degenerate, "opposite facet pencils share a plane");
  return w[0];
}

}  // namespace

std::optional<CubeWeight> detect_projective_cube(const LabelledPolytope& P, const Grouping& g) {
  const int m = P.dim();
  bool cuboid = P.size() == 2 * m && g.ell() == m;
  for (const auto& f : g.factors) cuboid = cuboid && f.size() == 2;
  if (!cuboid || !matches_product_of_simplices(P, g)) throw Error(ErrorKind::NotCuboid, "polytope is not a labelled cuboid");

  CubeWeight out;
  if (P.exact()) {
    std::vector<std::vector<Rational>> lift;
    for (const auto& f : P.exact_facets()) {
      std::vector<Rational> v{f.a0};
      v.insert(v.end(), f.a.begin(), f.a.end());
      lift.push_back(v);
    }
    auto w = pencil_intersection(lift, g, m);
    if (!w) return std::nullopt;
    ExactAffine ew{(*w)[0], std::vector<Rational>(w->begin() + 1, w->end())};
    std::optional<Rational> lo, hi;
    for (const auto& v : P.exact_vertices()) {
      Rational x = ew(v);
      if (!lo || x < *lo) lo = x;
      if (!hi || x > *hi) hi = x;
    }
    Rational scale;
    if (*lo > 0) scale = *lo;
    else if (*hi < 0) scale = *hi;
    else return std::nullopt;
    ew.a0 /= scale;
    for (auto& x : ew.a) x /= scale;
    out.w = ew.to_double();
    out.exact = ew;
    return out;
  }
  std::vector<std::vector<double>> lift;
  for (const auto& f : P.facets()) {
    std::vector<double> v{f.a0};
    v.insert(v.end(), f.a.data(), f.a.data() + m);
    double nr = 0;
    for (double x : v) nr += x * x;
    for (double& x : v) x /= std::sqrt(nr);
    lift.push_back(v);
  }
  auto w = pencil_intersection(lift, g, m);
  if (!w) return std::nullopt;
  AffineFunction fw{(*w)[0], Eigen::Map<Eigen::VectorXd>(w->data() + 1, m)};
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : P.vertices()) {
    lo = std::min(lo, fw(v.point));
    hi = std::max(hi, fw(v.point));
  }
  const double tiny = kCombTol * std::max(std::abs(lo), std::abs(hi));
  double scale;
  if (lo > tiny) scale = lo;
  else if (hi < -tiny) scale = hi;
  else return std::nullopt;
  out.w = fw * (1.0 / scale);
  return out;
}

long long stabilizer_order(const LabelledPolytope& P, const std::vector<int>& face) {
  const int m = P.dim();
  std::vector<std::vector<BigInt>> M;
  std::uint64_t mask = 0;
  for (int s : face) {
    if (s < 0 || s >= P.size()) throw Error(ErrorKind::Input, "facet index out of range");
    mask |= std::uint64_t{1} << s;
    std::vector<BigInt> row;
    for (int j = 0; j < m; ++j) {
      if (P.exact()) {
        const Rational& x = P.exact_facets()[s].a[j];
        if (!is_integer(x)) throw Error(ErrorKind::NonIntegral, "normal of facet " + std::to_string(s) + " is not integral");
        row.push_back(boost::multiprecision::numerator(x));
      } else {
        double x = P.facet(s).a[j];
        if (std::abs(x - std::round(x)) > 1e-12 || std::abs(x) > 9e15)
          throw Error(ErrorKind::NonIntegral, "normal of facet " + std::to_string(s) + " is not integral");
        row.push_back(BigInt(static_cast<long long>(std::llround(x))));
      }
    }
    M.push_back(std::move(row));
  }
  bool is_face = false;
  for (const auto& v : P.vertices()) is_face = is_face || (v.active & mask) == mask;
  if (!is_face) throw Error(ErrorKind::Input, "facet set does not meet in a face");
  auto d = smith_invariants(M);
  if (d.size() != face.size()) throw Error(ErrorKind::Degenerate, "face normals are linearly dependent");
  BigInt prod = 1;
  for (const auto& x : d) prod *= x;
  return prod.convert_to<long long>();
}

std::vector<std::vector<Eigen::VectorXd>> triangulate(const LabelledPolytope& P) {
  const FaceLattice L = face_lattice(P);
  std::function<std::vector<std::vector<Eigen::VectorXd>>(const Face&)> rec = [&](const Face& F) {
    std::vector<std::vector<Eigen::VectorXd>> out;
    if (F.dim == 0) {
      out.push_back({L.vertices[F.vertices[0]].point});
      return out;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(P.dim());
    for (int v : F.vertices) c += L.vertices[v].point;
    c /= static_cast<double>(F.vertices.size());
    for (const auto& G : L.faces) {
      if (G.dim != F.dim - 1 || (G.facets & F.facets) != F.facets) continue;
      for (auto simplex : rec(G)) {
        simplex.push_back(c);
        out.push_back(std::move(simplex));
      }
    }
    return out;
  };
  return rec(L.faces.back());
}

double volume(const LabelledPolytope& P) {
  const int m = P.dim();
  double fact = 1;
  for (int k = 2; k <= m; ++k) fact *= k;
  double vol = 0;
  for (const auto& s : triangulate(P)) {
    Eigen::MatrixXd E(m, m);
    for (int k = 0; k < m; ++k) E.col(k) = s[k + 1] - s[0];
    vol += std::abs(E.determinant()) / fact;
  }
  return vol;
}

LabelledPolytope standard_product(const std::vector<int>& dims) {
  int m = 0;
  for (int d : dims) m += d;
  std::vector<ExactAffine> facets;
  Grouping g;
  int offset = 0;
  for (int d : dims) {
    std::vector<int> factor;
    for (int k = 0; k < d; ++k) {
      ExactAffine f{0, std::vector<Rational>(m, 0)};
      f.a[offset + k] = 1;
      factor.push_back(static_cast<int>(facets.size()));
      facets.push_back(f);
    }
    ExactAffine last{1, std::vector<Rational>(m, 0)};
    for (int k = 0; k < d; ++k) last.a[offset + k] = -1;
    factor.push_back(static_cast<int>(facets.size()));
    facets.push_back(last);
    g.factors.push_back(factor);
    offset += d;
  }
  return LabelledPolytope(m, facets, g);
}

}  // namespace lkq
