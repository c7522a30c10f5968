#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lkq/rational.hpp"

namespace lkq {

inline constexpr double kCombTol = 1e-9;

// L(mu) = a0 + <a, mu>
struct AffineFunction {
  double a0 = 0.0;
  Eigen::VectorXd a;

  double operator()(const Eigen::VectorXd& mu) const { return a0 + a.dot(mu); }
  AffineFunction operator+(const AffineFunction& o) const { return {a0 + o.a0, a + o.a}; }
  AffineFunction operator-() const { return {-a0, -a}; }
  AffineFunction operator*(double t) const { return {a0 * t, a * t}; }
};

struct ExactAffine {
  Rational a0;
  std::vector<Rational> a;

  AffineFunction to_double() const;
  Rational operator()(const std::vector<Rational>& mu) const;
};

// Partition of the facet index set into simplex factors I_1..I_l.
struct Grouping {
  std::vector<std::vector<int>> factors;

  int ell() const { return static_cast<int>(factors.size()); }
  int total() const;
  // factor index of each facet; throws GroupingMismatch if not a partition of 0..n-1
  std::vector<int> factor_of(int n) const;
  std::vector<int> dims() const;  // m_i = |I_i| - 1
};

struct Vertex {
  Eigen::VectorXd point;
  std::uint64_t active = 0;  // bitmask of facets through the vertex
};

struct Face {
  std::uint64_t facets = 0;      // S' = facets containing the face
  std::vector<int> vertices;     // indices into the vertex list
  int dim = -1;
};

struct FaceLattice {
  std::vector<Vertex> vertices;
  std::vector<Face> faces;  // nonempty faces, top face included; the empty face is implicit

  int count(int dim) const;
};

class LabelledPolytope {
 public:
  LabelledPolytope(int dim, std::vector<AffineFunction> facets,
                   std::optional<Grouping> grouping = std::nullopt);
  LabelledPolytope(int dim, std::vector<ExactAffine> facets,
                   std::optional<Grouping> grouping = std::nullopt);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(facets_.size()); }
  const std::vector<AffineFunction>& facets() const { return facets_; }
  const AffineFunction& facet(int s) const { return facets_[s]; }
  bool exact() const { return exact_.has_value(); }
  const std::vector<ExactAffine>& exact_facets() const { return *exact_; }
  const std::optional<Grouping>& grouping() const { return grouping_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  // exact vertex coordinates, available when exact()
  const std::vector<std::vector<Rational>>& exact_vertices() const { return exact_vertices_; }

  Eigen::VectorXd barycenter() const;  // vertex average
  double diameter() const;             // max vertex distance
  double min_label(const Eigen::VectorXd& mu) const;
  bool contains(const Eigen::VectorXd& mu, double tol = 0.0) const;
  // axis-aligned bounding box of the vertices
  std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box() const;

 private:
  void validate();

  int dim_;
  std::vector<AffineFunction> facets_;
  std::optional<std::vector<ExactAffine>> exact_;
  std::optional<Grouping> grouping_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Rational>> exact_vertices_;
};

FaceLattice face_lattice(const LabelledPolytope& P);
bool is_simple(const LabelledPolytope& P);
bool matches_product_of_simplices(const LabelledPolytope& P, const Grouping& grouping);

struct CubeWeight {
  AffineFunction w;
  std::optional<ExactAffine> exact;
};
// Requires a grouping into m pairs. Returns the positive affine w through the
// pencils of opposite facets, normalized to min 1 over the vertices.
std::optional<CubeWeight> detect_projective_cube(const LabelledPolytope& P, const Grouping& grouping);

// Order of (lattice points of span{u_s}) / (integer span of u_s) for s in the face.
long long stabilizer_order(const LabelledPolytope& P, const std::vector<int>& face);

// Cone-from-barycenter triangulation of P; each simplex as m+1 points.
std::vector<std::vector<Eigen::VectorXd>> triangulate(const LabelledPolytope& P);
double volume(const LabelledPolytope& P);

// Product of standard simplices of the given dimensions, with its canonical grouping.
LabelledPolytope standard_product(const std::vector<int>& dims);

}  // namespace lkq
