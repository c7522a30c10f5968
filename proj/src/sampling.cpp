#include "lkq/sampling.hpp"

#include <cmath>

#include "lkq/error.hpp"

namespace lkq {

SigmaPoint SigmaPoint::make(Eigen::VectorXd raw, const Grouping& g) {
  g.factor_of(static_cast<int>(raw.size()));
  raw = raw.cwiseMax(0.0);
  for (const auto& f : g.factors) {
    double sum = 0;
    for (int s : f) sum += raw[s];
    if (!(sum > 0)) throw Error(ErrorKind::Input, "sigma vanishes on a whole factor");
    for (int s : f) raw[s] /= sum;
  }
  return {raw};
}

SigmaPoint sample_sigma(const Grouping& g, Rng& rng) {
  Eigen::VectorXd sigma(g.total());
  for (const auto& f : g.factors) {
    double sum = 0;
    for (int s : f) {
      sigma[s] = -std::log(uniform01(rng));
      sum += sigma[s];
    }
    for (int s : f) sigma[s] /= sum;
  }
  return {sigma};
}

SampleBatch sample(const Grouping& g, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::Input, "sample count must be positive");
  g.factor_of(g.total());
  SampleBatch b{{}, seed, g};
  Rng rng(seed);
  b.points.reserve(n);
  for (int k = 0; k < n; ++k) b.points.push_back(sample_sigma(g, rng));
  return b;
}

std::vector<Eigen::VectorXd> uniform_in_polytope(const LabelledPolytope& P, int n, Rng& rng) {
  auto [lo, hi] = P.bounding_box();
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  Eigen::VectorXd x(P.dim());
  while (static_cast<int>(out.size()) < n) {
    for (int j = 0; j < P.dim(); ++j) x[j] = lo[j] + (hi[j] - lo[j]) * uniform01(rng);
    if (P.contains(x)) out.push_back(x);
  }
  return out;
}

std::vector<Eigen::VectorXd> interior_points(const LabelledPolytope& P, int n, std::uint64_t seed, double shrink) {
  Rng rng(seed);
  const auto& V = P.vertices();
  Eigen::VectorXd c = P.barycenter();
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(P.dim());
    double sum = 0;
    for (const auto& v : V) {
      double e = -std::log(uniform01(rng));
      x += e * v.point;
      sum += e;
    }
    x /= sum;
    out.push_back(c + shrink * (x - c));
  }
  return out;
}

}  // namespace lkq
