#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lkq/calabi.hpp"
#include "lkq/curvature.hpp"
#include "lkq/error.hpp"
#include "lkq/io.hpp"
#include "lkq/levi.hpp"
#include "lkq/parallel.hpp"
#include "lkq/potential.hpp"
#include "lkq/quad.hpp"
#include "lkq/sampling.hpp"
#include "lkq/sphere_lab.hpp"

using nlohmann::json;
using namespace lkq;

namespace {

constexpr const char* kConvention =
    "Labels are affine functions L(mu) = a0 + <a, mu>, constant term first; the polytope is\n"
    "{L >= 0}. Facets sharing a group id form one simplex factor. See schema/polytope.schema.json.\n"
    "Exit codes: 0 success, 1 negative verdict, 2 input error, 3 numerical failure.";

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SingularSystem:
    case ErrorKind::Inconsistent:
    case ErrorKind::BoundaryProximity:
    case ErrorKind::IllConditioned:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::CharacteristicHyperplane:
    case ErrorKind::SingularRestriction:
    case ErrorKind::SelfCheckFailure:
      return 3;
    case ErrorKind::IdentityFailure:
    case ErrorKind::ConditionFailure:
    case ErrorKind::NonConstantScalar:
    case ErrorKind::ContainmentFailure:
    case ErrorKind::CoverageFailure:
      return 1;
    default:
      return 2;
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<Rational> rationals(const std::string& s) {
  std::vector<Rational> v;
  for (const auto& t : split(s)) v.push_back(parse_rational(t));
  return v;
}

// "a0,a1,...,am"
AffineFunction affine_arg(const std::string& s, int m, const char* name) {
  auto v = rationals(s);
  if (static_cast<int>(v.size()) != m + 1)
    throw Error(ErrorKind::Input, std::string(name) + " needs " + std::to_string(m + 1) + " comma separated values");
  AffineFunction f{to_double(v[0]), Eigen::VectorXd(m)};
  for (int i = 0; i < m; ++i) f.a[i] = to_double(v[i + 1]);
  return f;
}

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) rows.push_back(vec(M.row(i).transpose()));
  return rows;
}

json affine(const AffineFunction& f) { return {{"a0", f.a0}, {"a", vec(f.a)}}; }

const Grouping& grouping_of(const LabelledPolytope& P) {
  if (!P.grouping()) throw Error(ErrorKind::Input, "the polytope document has no groups");
  return *P.grouping();
}

AffineFunction weight_arg(const LabelledPolytope& P, const std::string& w) {
  if (w == "auto") {
    auto cw = detect_projective_cube(P, grouping_of(P));
    if (!cw) throw Error(ErrorKind::Input, "--w auto: the polytope is not a projective cube");
    return cw->w;
  }
  return affine_arg(w, P.dim(), "--w");
}

double p_arg(const LabelledPolytope& P, const std::string& p) {
  if (p == "auto") return P.dim() + 2.0;
  return to_double(parse_rational(p));
}

std::uint64_t default_seed() {
  const char* env = std::getenv("LKQ_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (...) {
    throw Error(ErrorKind::Input, "LKQ_SEED must be a nonnegative integer");
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("Levi-Kahler quotients of products of spheres: toric potentials, curvature and checks.\n") +
               kConvention};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for grid sweeps")->check(CLI::PositiveNumber);

  std::string file;
  auto* check = app.add_subcommand("check", "simplicity, grouping match, projective cube, positivity");
  check->add_option("file", file)->required();

  bool guillemin = false;
  std::vector<std::string> at;
  auto* potential = app.add_subcommand("potential", "G, grad G and Hess G at a point");
  potential->add_option("file", file)->required();
  potential->add_flag("--guillemin", guillemin, "use the Guillemin potential instead of the LK potential");
  potential->add_option("--at", at, "momentum coordinates")->required();

  int grid = 10;
  std::string w_opt, p_opt = "auto";
  auto* scalar = app.add_subcommand("scalar", "CSV of (mu, s, s_wp) on an interior grid");
  scalar->add_option("file", file)->required();
  scalar->add_option("--grid", grid, "points per axis")->check(CLI::Range(2, 200));
  scalar->add_option("--w", w_opt, "weight: auto or a0,a1,...");
  scalar->add_option("--p", p_opt, "exponent: auto (m+2) or a number");

  auto* extremal = app.add_subcommand("extremal", "affine fit of s, or of s_wp when --w is given");
  extremal->add_option("file", file)->required();
  extremal->add_option("--grid", grid, "points per axis")->check(CLI::Range(2, 200));
  extremal->add_option("--w", w_opt, "weight: auto or a0,a1,...");
  extremal->add_option("--p", p_opt, "exponent: auto (m+2) or a number");

  std::string C_opt, c_opt;
  auto* quad = app.add_subcommand("quad", "ambitoric class and extremality of a quadrilateral");
  quad->add_option("--C", C_opt, "alpha,gamma,beta,delta")->required();
  quad->add_option("--c", c_opt, "c1,c2")->default_val("1,1");
  int quad_grid = 14;
  quad->add_option("--grid", quad_grid, "points per axis")->check(CLI::Range(4, 200));

  std::string beta_opt, eta_opt, cc_opt, s_opt;
  auto* csc = app.add_subcommand("calabi-csc", "certify the CSC hamiltonian 2-form family");
  csc->add_option("--beta", beta_opt)->required();
  csc->add_option("--eta", eta_opt)->required();
  csc->add_option("--c", cc_opt, "quartic coefficient; derived from --s when absent");
  csc->add_option("--s", s_opt, "base scalar curvature (default 4)");
  int csc_grid = 10;
  csc->add_option("--grid", csc_grid, "points per axis over (xi1, xi2, z)")->check(CLI::Range(2, 100));

  int n = 100000;
  std::uint64_t seed = 0;
  auto* samp = app.add_subcommand("sample", "moment-image containment and coverage");
  samp->add_option("file", file)->required();
  samp->add_option("--n", n, "number of sigma samples")->check(CLI::PositiveNumber);
  auto* seed_opt = samp->add_option("--seed", seed, "seed (default LKQ_SEED or 0)");

  std::string h_opt;
  int n_quad = 100000;
  auto* fut = app.add_subcommand("futaki", "generalized Futaki invariant for the LK and Guillemin potentials");
  fut->set_help_flag("--help", "print this help message and exit");  // frees --h
  fut->add_option("file", file)->required();
  fut->add_option("--w", w_opt, "weight: auto or a0,a1,...")->required();
  fut->add_option("--p", p_opt, "exponent: auto (m+2) or a number");
  fut->add_option("--h", h_opt, "hamiltonian a0,a1,...")->required();
  fut->add_option("--n-quad", n_quad, "quadrature nodes")->check(CLI::PositiveNumber);

  std::string face_opt;
  auto* stab = app.add_subcommand("stab", "order of the stabilizer of a face");
  stab->add_option("file", file)->required();
  stab->add_option("--face", face_opt, "facet indices s1,s2,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      auto P = read_polytope(file);
      const auto& g = grouping_of(P);
      json out;
      out["dim"] = P.dim();
      out["facets"] = P.size();
      out["vertices"] = P.vertices().size();
      out["simple"] = is_simple(P);
      out["product_of_simplices"] = matches_product_of_simplices(P, g);
      std::optional<CubeWeight> cw;
      if (g.ell() == P.dim() && P.size() == 2 * P.dim()) cw = detect_projective_cube(P, g);
      out["projective_cube"] = cw.has_value();
      if (cw) out["cube_weight"] = affine(cw->w);
      auto pos = is_positive_pair(P, g, 10000, default_seed());
      out["positive"] = pos.positive();
      out["min_chi"] = pos.min_chi;
      emit(out);
      bool ok = out["simple"].get<bool>() && out["product_of_simplices"].get<bool>() && pos.positive();
      return ok ? 0 : 1;
    }

    if (*potential) {
      auto P = read_polytope(file);
      if (static_cast<int>(at.size()) != P.dim())
        throw Error(ErrorKind::Input, "--at needs " + std::to_string(P.dim()) + " coordinates");
      Eigen::VectorXd mu(P.dim());
      for (int i = 0; i < P.dim(); ++i) mu[i] = to_double(parse_rational(at[i]));
      if (!P.contains(mu)) throw Error(ErrorKind::Input, "--at point is outside the polytope");
      auto G = guillemin ? guillemin_potential(P) : levi_kahler_potential(P, grouping_of(P));
      G.require_interior(mu);
      emit({{"potential", guillemin ? "guillemin" : "levi-kahler"},
            {"mu", vec(mu)},
            {"G", G.eval(mu)},
            {"grad", vec(G.grad(mu))},
            {"hess", mat(G.hess(mu))}});
      return 0;
    }

    if (*scalar) {
      auto P = read_polytope(file);
      auto G = levi_kahler_potential(P, grouping_of(P));
      AffineFunction w{1.0, Eigen::VectorXd::Zero(P.dim())};
      if (!w_opt.empty()) w = weight_arg(P, w_opt);
      const double p = p_arg(P, p_opt);
      auto pts = interior_grid(P, grid);
      std::vector<CurvatureSample> rows(pts.size());
      parallel_for(static_cast<int>(pts.size()), threads, [&](int i) { rows[i] = curvature_sample(G, pts[i], w, p); });
      for (int i = 0; i < P.dim(); ++i) std::printf("mu%d,", i + 1);
      std::printf("s,s_wp\n");
      for (const auto& r : rows) {
        for (int i = 0; i < P.dim(); ++i) std::printf("%.17g,", r.mu[i]);
        std::printf("%.17g,%.17g\n", r.s, r.s_wp);
      }
      return 0;
    }

    if (*extremal) {
      auto P = read_polytope(file);
      auto G = levi_kahler_potential(P, grouping_of(P));
      const bool weighted = !w_opt.empty();
      AffineFunction w{1.0, Eigen::VectorXd::Zero(P.dim())};
      if (weighted) w = weight_arg(P, w_opt);
      const double p = p_arg(P, p_opt);
      auto pts = interior_grid(P, grid);
      std::vector<double> vals(pts.size());
      parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
        auto c = curvature_sample(G, pts[i], w, p);
        vals[i] = weighted ? c.s_wp : c.s;
      });
      auto fit = affine_fit(pts, vals);
      bool ok = fit.max_residual < 1e-8;
      json out{{"quantity", weighted ? "s_wp" : "s"},
               {"points", pts.size()},
               {"extremal", ok},
               {"residual", fit.max_residual},
               {"extremal_function", affine(fit.f)}};
      if (weighted) {
        out["w"] = affine(w);
        out["p"] = p;
      }
      emit(out);
      return ok ? 0 : 1;
    }

    if (*quad) {
      auto C = rationals(C_opt);
      auto c = rationals(c_opt);
      if (C.size() != 4 || c.size() != 2) throw Error(ErrorKind::Input, "--C needs 4 values and --c needs 2");
      QuadData Q{C[0], C[1], C[2], C[3], c[0], c[1]};
      auto rep = extremal_check(Q, quad_grid);
      json out{{"class", to_string(rep.cls.tag)},
               {"numeric_extremal", rep.numeric_extremal},
               {"fit_residual", rep.fit_residual},
               {"extremal_function", affine(rep.extremal_function)},
               {"wp_fit_residual", rep.wp_fit_residual},
               {"polytope", polytope_to_json(quad_setup(Q).polytope)}};
      if (rep.closed_form_extremal) out["closed_form_extremal"] = *rep.closed_form_extremal;
      emit(out);
      return rep.numeric_extremal ? 0 : 1;
    }

    if (*csc) {
      Rational beta = parse_rational(beta_opt), eta = parse_rational(eta_opt);
      Rational s = s_opt.empty() ? Rational(4) : parse_rational(s_opt);
      HFKGData D = cc_opt.empty() ? HFKGData::with_scalar(beta, eta, s) : HFKGData{beta, eta, parse_rational(cc_opt)};
      json out{{"beta", to_string(beta)}, {"eta", to_string(eta)}, {"c", to_string(D.c)}, {"base_scalar", to_string(s)}};
      out["identity_value"] = to_string(D.scalar());
      try {
        auto rep = csc_certify(D, s, csc_grid, threads);
        out["condition"] = true;
        out["points"] = rep.points;
        out["scalar_min"] = rep.s_min;
        out["scalar_max"] = rep.s_max;
        out["scalar_mean"] = rep.s_mean;
        out["relative_spread"] = rep.spread;
        out["certified"] = true;
        emit(out);
        return 0;
      } catch (const Error& e) {
        if (exit_code(e.kind()) != 1) throw;
        out["condition"] = e.kind() != ErrorKind::ConditionFailure;
        out["certified"] = false;
        out["failure"] = e.what();
        emit(out);
        return 1;
      }
    }

    if (*samp) {
      auto P = read_polytope(file);
      const auto& g = grouping_of(P);
      if (!*seed_opt) seed = default_seed();
      auto batch = sample(g, n, seed);
      auto rep = moment_image_test(P, g, batch, false, threads);
      emit({{"samples", rep.samples},
            {"seed", seed},
            {"singular", rep.singular},
            {"min_margin", rep.min_margin},
            {"containment", rep.containment},
            {"hull_measure", rep.hull_measure},
            {"polytope_measure", rep.polytope_measure},
            {"coverage", rep.coverage},
            {"covered", rep.covered}});
      return rep.pass() ? 0 : 1;
    }

    if (*fut) {
      auto P = read_polytope(file);
      auto w = weight_arg(P, w_opt);
      const double p = p_arg(P, p_opt);
      auto h = affine_arg(h_opt, P.dim(), "--h");
      double f_lk = futaki(levi_kahler_potential(P, grouping_of(P)), w, p, h, n_quad, threads);
      double f_g = futaki(guillemin_potential(P), w, p, h, n_quad, threads);
      double scale = std::max(std::abs(f_lk), std::abs(f_g));
      emit({{"futaki_lk", f_lk},
            {"futaki_guillemin", f_g},
            {"relative_difference", scale > 0 ? std::abs(f_lk - f_g) / scale : 0.0},
            {"w", affine(w)},
            {"p", p},
            {"h", affine(h)},
            {"n_quad", n_quad}});
      return 0;
    }

    if (*stab) {
      auto P = read_polytope(file);
      std::vector<int> face;
      for (const auto& t : split(face_opt)) {
        try {
          face.push_back(std::stoi(t));
        } catch (...) {
          throw Error(ErrorKind::Input, "bad facet index '" + t + "'");
        }
      }
      emit({{"face", face}, {"order", stabilizer_order(P, face)}});
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "lkq: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "lkq: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
