#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "curvature.hpp"
#include "octonion.hpp"
#include "report.hpp"
#include "sphere.hpp"

namespace twistor {

namespace detail {

inline ClaimReport claim(std::string id, std::string anchor, std::string params, int trials,
                         double residual, bool ok, std::string extra = "") {
  return {std::move(id), std::move(anchor), std::move(params), trials,
          residual,      std::move(extra),  ok ? "pass" : "fail"};
}

inline ClaimReport info(std::string id, std::string anchor, std::string params, int trials,
                        double residual, std::string extra = "") {
  return {std::move(id), std::move(anchor), std::move(params), trials,
          residual,      std::move(extra),  "info"};
}

inline std::string pq_str(int p, int q, int trials) {
  return "p=" + std::to_string(p) + " q=" + std::to_string(q) +
         " trials=" + std::to_string(trials);
}

inline std::uint64_t trial_seed(const SuiteConfig& cfg, int i) {
  return cfg.seed ^ static_cast<std::uint64_t>(i);
}

inline double max_pair_abs(const CurvatureOperator& R) {
  double res = 0.0;
  for (int a = 0; a < R.dim(); ++a)
    for (int b = a + 1; b < R.dim(); ++b) res = std::max(res, max_abs(R.at(a, b)));
  return res;
}

/// Random point of the unit pseudo-sphere, rejecting the near-null cone.
inline Vec random_sphere_point(const DiagonalMetric& g, GaussianRng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Vec x = rng.gauss_vector(g.dim());
    const double qq = g.inner(x, x);
    if (qq > 0.05) return Vec(x / std::sqrt(qq));
  }
  throw DegenerateSamples("random_sphere_point: rejection sampling failed");
}

inline Vec random_tangent(const DiagonalMetric& g, const Vec& x, GaussianRng& rng) {
  Vec v = rng.gauss_vector(g.dim());
  v -= g.inner(v, x) * x;
  return Vec(v / v.norm());
}

/// Random tangent with a prescribed causal character (sign of <v,v>).
inline Vec random_causal_tangent(const DiagonalMetric& g, const Vec& x, GaussianRng& rng,
                                 double want_sign) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Vec v = random_tangent(g, x, rng);
    if (g.inner(v, v) * want_sign > 1e-3) return v;
  }
  throw DegenerateSamples("random_causal_tangent: rejection sampling failed");
}

inline CurvatureOperator random_curvature(const DiagonalMetric& g, GaussianRng& rng) {
  const int m = g.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) comp[a][b] = random_so_element(g, rng, 1.0);
  return CurvatureOperator(g, std::move(comp));
}

inline Endo random_symmetric(int m, GaussianRng& rng) {
  const Endo S = rng.gauss_matrix(m, m);
  return Endo(0.5 * (S + S.transpose()));
}

/// Curvature operator of the Kulkarni-Nomizu product h (x) k of two
/// symmetric forms; satisfies the first Bianchi identity exactly.
inline CurvatureOperator curvature_from_kn(const DiagonalMetric& g, const Endo& h,
                                           const Endo& k) {
  const int m = g.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Endo E(m, m);
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) E(d, c) = g.sign(d) * kulkarni_nomizu(h, k, a, b, c, d);
      comp[a][b] = std::move(E);
    }
  return CurvatureOperator(g, std::move(comp));
}

inline Endo ricci_of(const CurvatureOperator& R) {
  const int m = R.dim();
  const DiagonalMetric& g = R.metric();
  const auto R4 = [&](int a, int b, int c, int d) { return g.sign(d) * R.pair(a, b)(d, c); };
  Endo ric(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += g.sign(k) * R4(k, b, c, k);
      ric(b, c) = acc;
    }
  return ric;
}

/// Orthonormal basis of {1, J1}^perp at a fibre point (horizontal lift
/// directions), by pivoted Gram-Schmidt on projected coordinate directions.
inline OrthonormalSet horizontal_onb(const TwistorPoint& tp) {
  const DiagonalMetric& g = tp.big;
  const int M = g.dim();
  const Vec e0 = Vec::Unit(M, 0);
  const Vec xh = tp.base();
  std::vector<Vec> cands;
  for (int k = 0; k < M; ++k) {
    Vec w = Vec::Unit(M, k);
    w -= g.inner(w, e0) * e0;
    w -= g.inner(w, xh) * xh;
    cands.push_back(std::move(w));
  }
  OrthonormalSet out;
  while (static_cast<int>(out.vectors.size()) < M - 2) {
    double best_norm = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const double nn = std::abs(g.inner(cands[i], cands[i]));
      if (nn > best_norm) { best_norm = nn; best = i; }
    }
    if (cands.empty() || best_norm <= 1e-8)
      throw DegenerateSubspace("horizontal_onb: projected directions do not span");
    const double norm2 = g.inner(cands[best], cands[best]);
    const double sgn = norm2 > 0 ? 1.0 : -1.0;
    const Vec b = cands[best] / std::sqrt(std::abs(norm2));
    out.vectors.push_back(b);
    out.signs.push_back(sgn);
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(best));
    for (Vec& w : cands) w -= sgn * g.inner(w, b) * b;
  }
  return out;
}

/// Random twistor point together with a local section of the twistor bundle
/// of S^{2n}_{2q} anchored at its base point.
struct SectionSetup {
  PseudoSphere sphere;
  FdGeometry geo;
  Vec x0;  // section anchor; the section is parallel here, so probing
           // derivative identities uses the offset point x instead
  Vec x;
  JSection jsec;
};

inline SectionSetup random_section(int p, int q, GaussianRng& rng) {
  const PseudoSphere s(DiagonalMetric::standard(2 * p + 1, 2 * q));
  const TwistorPoint tp = random_twistor_point(p, q, rng);
  const Vec x0 = drop_vector(tp.base());
  const Vec x = s.curve(x0, random_tangent(s.ambient, x0, rng), 0.3);
  JSection jsec = local_section(s, tp.J, x0);
  return {s, FdGeometry::sphere(s), x0, x, std::move(jsec)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline std::vector<ClaimReport> suite_killing(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{2, 1}, {3, 1}, {2, 2}, {4, 0}};
  for (const auto& [k, l] : sigs) {
    const DiagonalMetric g = DiagonalMetric::standard(k, l);
    double worst = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const Endo A = random_so_element(g, rng, 1.0);
      const Endo B = random_so_element(g, rng, 1.0);
      worst = std::max(worst, std::abs(killing_via_ad(g, A, B) - killing_closed_form(k, l, A, B)));
    }
    out.push_back(detail::claim(
        "killing_form_so" + std::to_string(k) + "_" + std::to_string(l),
        "B(A,B) = (k+l-2) tr(AB) on so_{k,l}",
        "k=" + std::to_string(k) + " l=" + std::to_string(l) + " trials=" +
            std::to_string(cfg.trials),
        cfg.trials, worst, worst <= cfg.tol));
  }
  return out;
}

inline std::vector<ClaimReport> suite_index(const SuiteConfig& cfg) {
  (void)cfg;  // exact integer check; no sampling knobs apply
  std::vector<ClaimReport> out;
  for (int n = 2; n <= 4; ++n)
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      const Inertia in = fiber_metric_inertia(p, q);
      const int expected = fiber_index_formula(p, q);
      const double residual = std::abs(in.negative - expected) + in.zero;
      out.push_back(detail::claim(
          "fiber_metric_index_p" + std::to_string(p) + "q" + std::to_string(q),
          "index of -B restricted to m_J = q^2 - q + 2pq", detail::pq_str(p, q, 1), 1, residual,
          residual == 0.0,
          "negative=" + std::to_string(in.negative) + " positive=" + std::to_string(in.positive) +
              " zero=" + std::to_string(in.zero) + " expected_negative=" +
              std::to_string(expected)));
    }
  return out;
}

inline std::vector<ClaimReport> suite_metric14(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{1, 0}, {1, 1}, {2, 0}, {2, 1}};
  for (const auto& [p, q] : sigs) {
    const int n = p + q;
    double worst = 0.0, worst_gram = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const TwistorPoint tp = random_twistor_point(p, q, rng);
      const Endo A = random_m_element(tp, rng);
      const Endo B = random_m_element(tp, rng);
      const double lhs = killing_metric_plus_one(tp, A, B);
      const TwistorTangent At = split_tangent(tp, A);
      const TwistorTangent Bt = split_tangent(tp, B);
      double rhs;
      if (n == 1) {
        rhs = 8.0 * n * tp.big.inner(At.h, Bt.h);
        worst = std::max(worst, std::max(max_abs(At.v), max_abs(Bt.v)));
      } else {
        rhs = G_t(tp, At, Bt, static_cast<double>(n) / (n - 1));
      }
      worst = std::max(worst, std::abs(lhs - rhs));
      // horizontal lifts of an orthonormal base frame are G^t-orthogonal
      // with squared lengths 8n eps_i, independently of t
      const OrthonormalSet onb = detail::horizontal_onb(tp);
      for (std::size_t a = 0; a < onb.vectors.size(); ++a)
        for (std::size_t b = a; b < onb.vectors.size(); ++b) {
          const TwistorTangent Ha{onb.vectors[a], Endo::Zero(tp.big.dim(), tp.big.dim())};
          const TwistorTangent Hb{onb.vectors[b], Endo::Zero(tp.big.dim(), tp.big.dim())};
          const double got = G_t(tp, Ha, Hb, 1.0);
          const double want = (a == b) ? 8.0 * n * onb.signs[a] : 0.0;
          worst_gram = std::max(worst_gram, std::abs(got - want));
        }
    }
    const std::string anchor = (n == 1)
        ? "-2n tr(AB) = 8n <A1,B1> (n = 1: vertical space trivial)"
        : "-2n tr(AB) = 8n <A1,B1> + (n/(n-1)) g_f(A',B')";
    out.push_back(detail::claim("fiber_metric_identity_p" + std::to_string(p) + "q" +
                                    std::to_string(q),
                                anchor, detail::pq_str(p, q, cfg.trials), cfg.trials, worst,
                                worst <= cfg.tol));
    out.push_back(detail::claim("lift_basis_gram_p" + std::to_string(p) + "q" + std::to_string(q),
                                "G^t(H_ei, H_ej) = 8n eps_i delta_ij",
                                detail::pq_str(p, q, cfg.trials), cfg.trials, worst_gram,
                                worst_gram <= cfg.tol));
  }
  return out;
}

inline std::vector<ClaimReport> suite_spectrum(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{2, 0}, {1, 1}, {3, 0}, {2, 1}};
  for (const auto& [p, q] : sigs) {
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    GaussianRng rng(cfg.seed);
    const Endo J = random_ocs(p, q, rng);
    const std::vector<Complex> ev = action_spectrum(g, J, /*tol=*/1e9);
    double worst = 0.0;
    int m0 = 0, m2 = 0, m4 = 0;
    for (const Complex& l : ev) {
      const double d0 = std::abs(l);
      const double d2 = std::min(std::abs(l - Complex(0, 2)), std::abs(l + Complex(0, 2)));
      const double d4 = std::min(std::abs(l - Complex(0, 4)), std::abs(l + Complex(0, 4)));
      const double d = std::min({d0, d2, d4});
      worst = std::max(worst, d);
      if (d0 == std::min({d0, d2, d4})) ++m0;
      else if (d2 <= d4) ++m2;
      else ++m4;
    }
    out.push_back(detail::claim(
        "curvature_action_spectrum_p" + std::to_string(p) + "q" + std::to_string(q),
        "spec(R -> J.R) subset {0, +-2i, +-4i}", detail::pq_str(p, q, 1), 1, worst,
        worst <= 1e-7,
        "dim=" + std::to_string(2 * (p + q)) + " mult0=" + std::to_string(m0) + " mult2i=" +
            std::to_string(m2) + " mult4i=" + std::to_string(m4)));
    const double r4 = detail::max_pair_abs(four_i_component(J, constant_curvature(g)));
    out.push_back(detail::claim(
        "four_i_of_constant_curvature_p" + std::to_string(p) + "q" + std::to_string(q),
        "(4i)-component of constant curvature = 0", detail::pq_str(p, q, 1), 1, r4,
        r4 <= cfg.tol));
  }
  return out;
}

inline std::vector<ClaimReport> suite_integrability(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{2, 0}, {1, 1}, {3, 0}, {2, 1}};
  for (const auto& [p, q] : sigs) {
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    const CurvatureOperator Rconst = constant_curvature(g);
    const TorsionOperator T0 = TorsionOperator::zero(g);
    double worst = 0.0;
    double generic_min = 1e300;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const Endo J = random_ocs(p, q, rng);
      const auto [rT, rR] = integrability_residual(J, Rconst, T0);
      worst = std::max(worst, std::max(rT, rR));
      const auto [gT, gR] = integrability_residual(J, detail::random_curvature(g, rng), T0);
      (void)gT;
      generic_min = std::min(generic_min, gR);
    }
    out.push_back(detail::claim(
        "integrability_constant_curvature_p" + std::to_string(p) + "q" + std::to_string(q),
        "j+ R(j-X, j-Y) j- = 0 and j+ T(j-X, j-Y) = 0 (constant curvature)",
        detail::pq_str(p, q, cfg.trials), cfg.trials, worst, worst <= cfg.tol));
    out.push_back(detail::claim(
        "integrability_detects_generic_p" + std::to_string(p) + "q" + std::to_string(q),
        "j+ R(j-X, j-Y) j- != 0 for generic R (discrimination)",
        detail::pq_str(p, q, cfg.trials), cfg.trials, generic_min, generic_min >= 1e-6,
        "minimum residual over trials; pass requires >= 1e-6"));
  }
  return out;
}

inline std::vector<ClaimReport> suite_weyl(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}};
  for (const auto& [p, q] : sigs) {
    const int m = 2 * (p + q);
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    const std::string sig = "p" + std::to_string(p) + "q" + std::to_string(q);
    const double r_const = detail::max_pair_abs(weyl_tensor(constant_curvature(g)));
    out.push_back(detail::claim("weyl_of_constant_curvature_" + sig,
                                "Weyl(constant curvature) = 0", detail::pq_str(p, q, 1), 1,
                                r_const, r_const <= cfg.tol,
                                "dim=" + std::to_string(m)));
    GaussianRng rng(cfg.seed);
    double r_ricci_type = 0.0, r_trace = 0.0, r_idem = 0.0;
    const int reps = 5;
    for (int i = 0; i < reps; ++i) {
      const Endo h = detail::random_symmetric(m, rng);
      r_ricci_type = std::max(
          r_ricci_type, detail::max_pair_abs(weyl_tensor(detail::curvature_from_kn(g, h, g.gram()))));
      const Endo k = detail::random_symmetric(m, rng);
      const CurvatureOperator W = weyl_tensor(detail::curvature_from_kn(g, h, k));
      r_trace = std::max(r_trace, max_abs(detail::ricci_of(W)));
      const CurvatureOperator WW = weyl_tensor(W);
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
          r_idem = std::max(r_idem, max_abs(Endo(WW.at(a, b) - W.at(a, b))));
    }
    out.push_back(detail::claim("weyl_annihilates_ricci_type_" + sig,
                                "Weyl(h kn g) = 0 for symmetric h", detail::pq_str(p, q, reps),
                                reps, r_ricci_type, r_ricci_type <= cfg.tol));
    out.push_back(detail::claim("weyl_trace_free_" + sig, "Ric(Weyl(R)) = 0",
                                detail::pq_str(p, q, reps), reps, r_trace, r_trace <= cfg.tol));
    out.push_back(detail::claim("weyl_idempotent_" + sig, "Weyl(Weyl(R)) = Weyl(R)",
                                detail::pq_str(p, q, reps), reps, r_idem, r_idem <= cfg.tol));
  }
  return out;
}

inline std::vector<ClaimReport> suite_conformal(const SuiteConfig& cfg) {
  if (cfg.p < 0 || cfg.q < 0 || cfg.p + cfg.q < 2)
    throw UnsupportedDimension("conformal suite requires p+q >= 2");
  const DiagonalMetric g = DiagonalMetric::standard(2 * cfg.p, 2 * cfg.q);
  double worst = 0.0;
  for (int i = 0; i < cfg.trials; ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const Vec df = rng.gauss_vector(g.dim());
    const std::vector<Endo> A = conformal_difference_tensor(g, df, g.raise(df));
    const Endo j = random_ocs(cfg.p, cfg.q, rng);
    worst = std::max(worst, acs_invariance_residual(j, A));
  }
  return {detail::claim("conformal_acs_invariance",
                        "j+ A_{j-Y} j- = 0, A_X Y = df(X)Y + df(Y)X - g(X,Y) grad f",
                        detail::pq_str(cfg.p, cfg.q, cfg.trials), cfg.trials, worst,
                        worst <= cfg.tol)};
}

inline std::vector<ClaimReport> suite_sphere_curvature(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{1, 0}, {2, 0}, {3, 0}, {1, 1}, {1, 2}};
  for (const auto& [p, q] : sigs) {
    const PseudoSphere s(DiagonalMetric::standard(2 * p + 1, 2 * q));
    const FdGeometry geo = FdGeometry::sphere(s);
    const DiagonalMetric& g = s.ambient;
    double r_h = 0.0, r_h2 = 0.0;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const Vec x = detail::random_sphere_point(g, rng);
      const Vec X = detail::random_tangent(g, x, rng);
      const Vec Y = detail::random_tangent(g, x, rng);
      const Vec Z = detail::random_tangent(g, x, rng);
      const Vec exact = g.inner(Y, Z) * X - g.inner(X, Z) * Y;
      r_h = std::max(r_h,
                     (fd_curvature(geo, x, X, Y, Z, cfg.fd_step) - exact).cwiseAbs().maxCoeff());
      r_h2 = std::max(
          r_h2, (fd_curvature(geo, x, X, Y, Z, cfg.fd_step / 2) - exact).cwiseAbs().maxCoeff());
    }
    const std::string sig = "p" + std::to_string(p) + "q" + std::to_string(q);
    const std::string params = detail::pq_str(p, q, cfg.trials) + " h=" + format_double(cfg.fd_step);
    out.push_back(detail::claim("fd_curvature_constant_" + sig,
                                "R(X,Y)Z = <Y,Z>X - <X,Z>Y on the unit pseudo-sphere", params,
                                cfg.trials, r_h, r_h <= cfg.tol_fd));
    const double ratio = r_h2 > 0 ? r_h / r_h2 : 4.0;
    out.push_back(detail::claim("fd_curvature_order_" + sig, "FD curvature error is O(h^2)",
                                params, cfg.trials, r_h2, ratio >= 3.5,
                                "reduction_ratio=" + format_sci(ratio) + " (>= 3.5 required)"));
  }
  // flat analogue: every curvature sample is exactly zero
  const FdGeometry flat = FdGeometry::flat(DiagonalMetric::standard(2, 2));
  double r_flat = 0.0;
  for (int i = 0; i < std::min(cfg.trials, 20); ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const Vec x = rng.gauss_vector(4);
    r_flat = std::max(r_flat, fd_curvature(flat, x, rng.gauss_vector(4), rng.gauss_vector(4),
                                           rng.gauss_vector(4), cfg.fd_step)
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  out.push_back(detail::claim("fd_curvature_flat_zero", "R = 0 on flat space",
                              "dim=4 trials=" + std::to_string(std::min(cfg.trials, 20)),
                              std::min(cfg.trials, 20), r_flat, r_flat <= cfg.tol));
  return out;
}

inline std::vector<ClaimReport> suite_domega_threeway(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  const std::vector<std::pair<int, int>> sigs{{1, 1}, {3, 0}};
  for (const auto& [p, q] : sigs) {
    const std::string sig = "p" + std::to_string(p) + "q" + std::to_string(q);
    const std::string params = detail::pq_str(p, q, cfg.trials) + " h=" + format_double(cfg.fd_step);
    double worst_nabla = 0.0;
    std::vector<double> cs;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const detail::SectionSetup su = detail::random_section(p, q, rng);
      const Vec X = detail::random_tangent(su.sphere.ambient, su.x, rng);
      const Vec Y = detail::random_tangent(su.sphere.ambient, su.x, rng);
      const Vec Z = detail::random_tangent(su.sphere.ambient, su.x, rng);
      const double v_fd = d_omega_fd(su.geo, su.jsec, su.x, X, Y, Z, cfg.fd_step);
      const double v_nabla = d_omega_nabla(su.geo, su.jsec, su.x, X, Y, Z, cfg.fd_step);
      const double v_raw = d_omega_trace_raw(su.geo, su.jsec, su.x, X, Y, Z, cfg.fd_step);
      worst_nabla = std::max(worst_nabla, std::abs(v_fd - v_nabla));
      if (std::abs(v_raw) >= 1e-6) cs.push_back(v_fd / v_raw);
    }
    out.push_back(detail::claim("d_omega_invariant_vs_nabla_" + sig,
                                "d omega(X,Y,Z) = sum_cyc g((D_Z J)X, Y)", params, cfg.trials,
                                worst_nabla, worst_nabla <= cfg.tol_fd));
    double mean = 0.0, sd = 0.0;
    for (const double c : cs) mean += c;
    if (!cs.empty()) mean /= static_cast<double>(cs.size());
    for (const double c : cs) sd += (c - mean) * (c - mean);
    if (cs.size() > 1) sd = std::sqrt(sd / static_cast<double>(cs.size() - 1));
    const double cv = (mean != 0.0) ? std::abs(sd / mean) : 1.0;
    out.push_back(detail::claim(
        "d_omega_trace_coefficient_" + sig,
        "d omega = c * sum_cyc tr((X ^ Y) o D_Z J) for a single constant c", params,
        static_cast<int>(cs.size()), cv, cv <= 0.01 && cs.size() >= 20,
        "c_hat=" + format_double(mean) + " kept=" + std::to_string(cs.size()) +
            " cv=" + format_sci(cv)));
    out.push_back(detail::info(
        "d_omega_trace_coefficient_vs_printed_" + sig,
        "printed cyclic-trace weight 1/8 vs fitted c", params, static_cast<int>(cs.size()),
        std::abs(mean - 0.125),
        "fitted c_hat=" + format_double(mean) +
            "; distance to 1/8 recorded; fitted value matches 1/2, consistent with the"
            " factor-4 rescaling seen in the fibre d Omega coefficient"));
  }
  return out;
}

inline std::vector<ClaimReport> suite_domega_bundle(const SuiteConfig& cfg) {
  const int p = cfg.p, q = cfg.q, n = p + q;
  if (p < 0 || q < 0 || n < 2)
    throw UnsupportedDimension("domega_bundle suite requires p+q >= 2");
  const double t_pr = static_cast<double>(n) / (n - 1);
  const std::vector<double> ts{0.5, t_pr, 2.0};
  double worst_closed = 0.0, worst_patterns = 0.0;
  for (int i = 0; i < cfg.trials; ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const TwistorPoint tp = random_twistor_point(p, q, rng);
    const int M = tp.big.dim();
    const Endo Z0 = Endo::Zero(M, M);
    const TwistorTangent HX{random_base_tangent(tp, rng), Z0};
    const TwistorTangent HY{random_base_tangent(tp, rng), Z0};
    const TwistorTangent HZ{random_base_tangent(tp, rng), Z0};
    const TwistorTangent A = random_vertical(tp, rng);
    const TwistorTangent B = random_vertical(tp, rng);
    const TwistorTangent C = random_vertical(tp, rng);
    for (const double t : ts) {
      worst_closed = std::max(worst_closed,
                              std::abs(d_Omega_cyclic(tp, HX, HY, A, t) -
                                       d_Omega_two_horizontal(tp, HX.h, HY.h, A.v, t)));
      worst_patterns = std::max({worst_patterns, std::abs(d_Omega_cyclic(tp, HX, HY, HZ, t)),
                                 std::abs(d_Omega_cyclic(tp, A, B, C, t)),
                                 std::abs(d_Omega_cyclic(tp, A, B, HX, t))});
    }
  }
  const std::string params = detail::pq_str(p, q, cfg.trials) + " t={0.5,n/(n-1),2}";
  return {detail::claim("d_Omega_cyclic_matches_closed_form",
                        "sum_cyc Omega(T(.,.),.) = -16n<JAX,Y> + t g_f(J(X^Y)', A)", params,
                        cfg.trials, worst_closed, worst_closed <= cfg.tol),
          detail::claim("d_Omega_mixed_patterns_vanish",
                        "d Omega vanishes unless exactly one argument is vertical", params,
                        cfg.trials, worst_patterns, worst_patterns <= cfg.tol)};
}

inline std::vector<ClaimReport> suite_tstar(const SuiteConfig& cfg) {
  const int p = cfg.p, q = cfg.q, n = p + q;
  if (p < 0 || q < 0 || n < 2) throw UnsupportedDimension("tstar suite requires p+q >= 2");
  GaussianRng rng(cfg.seed);
  const TStarFit fit = solve_t_star(p, q, rng, cfg.trials);
  const double t_candidate = 4.0 * n / (n - 1.0);
  const std::string params = detail::pq_str(p, q, cfg.trials);
  return {detail::claim("t_star_annihilates_d_Omega",
                        "least-squares t* with d Omega(HX,HY,A') = 0 for all samples", params,
                        cfg.trials, fit.residual_at_t_star, fit.residual_at_t_star <= cfg.tol,
                        "t_star=" + format_double(fit.t_star) +
                            " candidate_4n_over_nm1=" + format_double(t_candidate) +
                            " delta=" + format_sci(std::abs(fit.t_star - t_candidate))),
          detail::info("t_star_vs_printed",
                       "printed t = n/(n-1) does not annihilate d Omega", params, cfg.trials,
                       fit.residual_at_t_printed,
                       "t_printed=" + format_double(fit.t_printed) +
                           "; residual at the printed value recorded; the measured zero"
                           " lies at t = 4n/(n-1)")};
}

inline std::vector<ClaimReport> suite_dvarpi_type(const SuiteConfig& cfg) {
  const int p = cfg.p, q = cfg.q, n = p + q;
  if (p < 0 || q < 0 || n < 2)
    throw UnsupportedDimension("dvarpi_type suite requires p+q >= 2");
  double worst30 = 0.0, min21 = 1e300, worst_closed = 0.0;
  for (int i = 0; i < cfg.trials; ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const TwistorPoint tp = random_twistor_point(p, q, rng);
    const VarpiTypeNorms norms = d_varpi_type(tp);
    worst30 = std::max(worst30, norms.norm_30_03);
    min21 = std::min(min21, norms.norm_21_12);
    const int M = tp.big.dim();
    const TwistorTangent HX{random_base_tangent(tp, rng), Endo::Zero(M, M)};
    const TwistorTangent HY{random_base_tangent(tp, rng), Endo::Zero(M, M)};
    const TwistorTangent A = random_vertical(tp, rng);
    const double closed = -2.0 * tp.big.inner(Vec(tp.J * A.v * HX.h), HY.h);
    worst_closed = std::max(worst_closed, std::abs(d_varpi(tp, HX, HY, A) - closed));
  }
  const std::string params = detail::pq_str(p, q, cfg.trials);
  return {detail::claim("d_varpi_type_30_vanishes", "d varpi^(3,0) = 0", params, cfg.trials,
                        worst30, worst30 <= cfg.tol),
          detail::claim("d_varpi_type_21_nonzero", "d varpi^(2,1) != 0 (varpi is not closed)",
                        params, cfg.trials, min21, min21 >= 1e-3,
                        "minimum (2,1)-norm over trials; pass requires >= 1e-3"),
          detail::claim("d_varpi_two_horizontal_closed_form",
                        "d varpi(HX,HY,A') = -2 <J A' X, Y>", params, cfg.trials, worst_closed,
                        worst_closed <= cfg.tol)};
}

inline std::vector<ClaimReport> suite_sigma_holo(const SuiteConfig& cfg) {
  const int p = cfg.p, q = cfg.q, n = p + q;
  if (p < 0 || q < 0 || n < 2)
    throw UnsupportedDimension("sigma_holo suite requires p+q >= 2");
  std::vector<ClaimReport> out;
  const DiagonalMetric ambient = DiagonalMetric::standard(2 * p + 1, 2 * q);
  double worst_cr = 0.0, worst_base = 0.0;
  for (int i = 0; i < cfg.trials; ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const TwistorPoint tp = random_twistor_point(p, q, rng);
    const Endo A = random_m_element(tp, rng);
    const Endo b_sphere = random_sphere_isometry(ambient, rng);
    const Endo b_full = matrix_exp(random_so_element(tp.big, rng, 0.5));
    worst_cr = std::max({worst_cr, sigma_cr_residual(tp, b_sphere, A),
                         sigma_cr_residual(tp, b_full, A)});
    const TwistorPoint moved = sigma_action(tp, b_sphere);
    worst_base = std::max(worst_base,
                          (moved.base() - b_sphere * tp.base()).cwiseAbs().maxCoeff());
  }
  const std::string params = detail::pq_str(p, q, cfg.trials);
  out.push_back(detail::claim("sigma_cr_residual",
                              "Sigma_b: J -> b J b^-1 intertwines the canonical structures",
                              params, cfg.trials, worst_cr, worst_cr <= cfg.tol));
  out.push_back(detail::claim("sigma_base_equivariance",
                              "pi(Sigma_b J) = b pi(J) for sphere isometries", params, cfg.trials,
                              worst_base, worst_base <= cfg.tol));

  // frame coefficients and holomorphy of local sections
  double worst_purity = 0.0, worst_recon = 0.0, worst_holo_sphere = 0.0;
  const int frame_trials = std::min(cfg.trials, 25);
  const Complex I(0.0, 1.0);
  for (int i = 0; i < frame_trials; ++i) {
    GaussianRng rng(detail::trial_seed(cfg, i));
    const detail::SectionSetup su = detail::random_section(p, q, rng);
    const AdaptedFrame frame = adapted_frame(su.geo, su.jsec, su.x);
    const FrameCoefficients coef = frame_coefficients(su.geo, su.jsec, su.x, frame, cfg.fd_step);
    std::vector<Vec> dirs;
    for (int k = 0; k < frame.pairs(); ++k) dirs.push_back(frame.x[k]);
    for (int k = 0; k < frame.pairs(); ++k) dirs.push_back(frame.jx[k]);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      worst_purity = std::max(worst_purity, coef.gamma[d].cwiseAbs().maxCoeff());
      for (int k = 0; k < frame.pairs(); ++k) {
        const Vec re = nabla_J_apply(su.geo, su.jsec, su.x, dirs[d],
                                     projected_constant(su.geo, frame.x[k]), cfg.fd_step);
        const Vec im = nabla_J_apply(su.geo, su.jsec, su.x, dirs[d],
                                     projected_constant(su.geo, frame.jx[k]), cfg.fd_step);
        CVec V = re.cast<Complex>() - I * im.cast<Complex>();
        for (int l = 0; l < frame.pairs(); ++l) {
          const CVec e_l = frame.x[l].cast<Complex>() - I * frame.jx[l].cast<Complex>();
          const CVec ebar_l = frame.x[l].cast<Complex>() + I * frame.jx[l].cast<Complex>();
          V -= coef.gamma[d](k, l) * e_l + coef.gamma_bar[d](k, l) * ebar_l;
        }
        worst_recon = std::max(worst_recon, V.cwiseAbs().maxCoeff());
      }
    }
    worst_holo_sphere =
        std::max(worst_holo_sphere, holomorphy_residual(su.geo, su.jsec, su.x, frame, cfg.fd_step));
  }
  const std::string fparams = detail::pq_str(p, q, frame_trials) + " h=" + format_double(cfg.fd_step);
  out.push_back(detail::claim("frame_gamma_type_purity",
                              "(D_xi J) e_k has no (1,0)-component", fparams, frame_trials,
                              worst_purity, worst_purity <= cfg.tol_fd));
  out.push_back(detail::claim("frame_coefficient_reconstruction",
                              "(D_xi J) e_k = sum_h gamma e_h + gamma_bar ebar_h", fparams,
                              frame_trials, worst_recon, worst_recon <= cfg.tol));

  // flat analogue: a constant structure is holomorphic along its own frame
  const FdGeometry flat = FdGeometry::flat(DiagonalMetric::standard(2 * p, 2 * q));
  const JSection const_sec{[p, q](const Vec&) { return standard_J(p, q); }};
  GaussianRng frng(cfg.seed);
  const Vec origin = frng.gauss_vector(2 * n);
  const AdaptedFrame flat_frame = adapted_frame(flat, const_sec, origin);
  const double flat_holo = holomorphy_residual(flat, const_sec, origin, flat_frame, cfg.fd_step);
  out.push_back(detail::claim("holomorphy_flat_vanishes",
                              "constant structure on flat space: (D_{e_k} J) e_l = 0",
                              detail::pq_str(p, q, 1), 1, flat_holo, flat_holo <= cfg.tol));
  out.push_back(detail::info("holomorphy_sphere_recorded",
                             "max |(D_{e_k} J) e_l| of a generic local section", fparams,
                             frame_trials, worst_holo_sphere,
                             "generically nonzero: local sections need not be holomorphic"));
  return out;
}

inline std::vector<ClaimReport> suite_s64_nearly_kahler(const SuiteConfig& cfg) {
  std::vector<ClaimReport> out;
  for (const OctFlavor f : {OctFlavor::split, OctFlavor::definite}) {
    const std::string tag = (f == OctFlavor::split) ? "split" : "definite";
    const DiagonalMetric g7 = imag_oct_metric(f);
    const FdGeometry geo = FdGeometry::sphere(oct_sphere(f));
    const JSection jsec = j6_section(f);
    double worst_sq = 0.0, worst_orth = 0.0, worst_nk = 0.0, worst_polar = 0.0;
    double max_nijenhuis = 0.0;
    int spacelike = 0, timelike = 0;
    for (int i = 0; i < cfg.trials; ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const Vec x = detail::random_sphere_point(g7, rng);
      Vec u;
      if (f == OctFlavor::split) {
        const double want = (i % 2 == 0) ? 1.0 : -1.0;
        u = detail::random_causal_tangent(g7, x, rng, want);
        (g7.inner(u, u) > 0 ? spacelike : timelike)++;
      } else {
        u = detail::random_tangent(g7, x, rng);
        ++spacelike;
      }
      const Vec v = detail::random_tangent(g7, x, rng);
      const Endo M = j6_matrix(f, x);
      worst_sq = std::max(worst_sq, (M * (M * u) + u).cwiseAbs().maxCoeff());
      worst_orth = std::max(worst_orth,
                            std::abs(g7.inner(Vec(M * u), Vec(M * v)) - g7.inner(u, v)));
      worst_nk = std::max(worst_nk, nearly_kahler_residual(f, x, u, cfg.fd_step));
      const Vec pol = nabla_J_apply(geo, jsec, x, u, projected_constant(geo, v), cfg.fd_step) +
                      nabla_J_apply(geo, jsec, x, v, projected_constant(geo, u), cfg.fd_step);
      worst_polar = std::max(worst_polar, pol.cwiseAbs().maxCoeff());
      max_nijenhuis =
          std::max(max_nijenhuis, nijenhuis(geo, jsec, x, u, v, cfg.fd_step).cwiseAbs().maxCoeff());
    }
    const std::string params = "flavor=" + tag + " trials=" + std::to_string(cfg.trials) +
                               " h=" + format_double(cfg.fd_step);
    out.push_back(detail::claim("j6_square_" + tag, "J_x^2 = -1 on T_x (x cross (x cross u) = -u)",
                                params, cfg.trials, worst_sq, worst_sq <= 1e-10));
    out.push_back(detail::claim("j6_orthogonality_" + tag, "g(J u, J v) = g(u, v)", params,
                                cfg.trials, worst_orth, worst_orth <= 1e-10));
    out.push_back(detail::claim(
        "nearly_kahler_residual_" + tag, "(D_u J) u = 0 (nearly pseudo-Kahler)", params,
        cfg.trials, worst_nk, worst_nk <= cfg.tol_fd,
        "spacelike_u=" + std::to_string(spacelike) + " timelike_u=" + std::to_string(timelike)));
    out.push_back(detail::claim("nearly_kahler_polarization_" + tag,
                                "(D_u J) v + (D_v J) u = 0", params, cfg.trials, worst_polar,
                                worst_polar <= cfg.tol_fd));
    out.push_back(detail::claim("nijenhuis_nonzero_" + tag,
                                "N != 0 at some sample (non-integrability witness)", params,
                                cfg.trials, max_nijenhuis, max_nijenhuis >= 0.05,
                                "max |N(u,v)| over trials; pass requires >= 0.05"));

    // algebra-level invariants
    double worst_mult = 0.0, worst_perp = 0.0, worst_anti = 0.0;
    const int pairs = 1000;
    GaussianRng rng(cfg.seed);
    for (int i = 0; i < pairs; ++i) {
      const Quat a = rng.gauss_vector(4);
      const Quat b = rng.gauss_vector(4);
      const double lhs = quat_norm2(f, quat_mul(f, a, b));
      const double rhs = quat_norm2(f, a) * quat_norm2(f, b);
      worst_mult = std::max(worst_mult, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      const Oct u = embed_imag(rng.gauss_vector(7));
      const Oct v = embed_imag(rng.gauss_vector(7));
      const Oct w = embed_imag(rng.gauss_vector(7));
      const DiagonalMetric g8 = oct_metric(f);
      const auto vol = [&](const Oct& A, const Oct& B, const Oct& C) {
        return g8.inner(Vec(octonion_cross(f, A, B)), Vec(C));
      };
      worst_perp = std::max({worst_perp, std::abs(vol(u, v, u)), std::abs(vol(u, v, v))});
      worst_anti = std::max({worst_anti, std::abs(vol(u, v, w) + vol(v, u, w)),
                             std::abs(vol(u, v, w) + vol(u, w, v))});
    }
    const std::string aparams = "flavor=" + tag + " pairs=" + std::to_string(pairs);
    out.push_back(detail::claim("quaternion_norm_multiplicative_" + tag,
                                "N(a b) = N(a) N(b) for (split) quaternions", aparams, pairs,
                                worst_mult, worst_mult <= 1e-10));
    out.push_back(detail::claim("octonion_cross_perpendicular_" + tag,
                                "g(u x v, u) = g(u x v, v) = 0", aparams, pairs, worst_perp,
                                worst_perp <= cfg.tol));
    out.push_back(detail::claim("octonion_cross_vol_antisymmetric_" + tag,
                                "g(u x v, w) totally antisymmetric on Im", aparams, pairs,
                                worst_anti, worst_anti <= cfg.tol));
  }

  // adjudication of the printed doubling pair, recorded rather than gated
  {
    const OctFlavor f = OctFlavor::split;
    const DiagonalMetric g7 = imag_oct_metric(f);
    double printed_sq = 0.0;
    for (int i = 0; i < std::min(cfg.trials, 50); ++i) {
      GaussianRng rng(detail::trial_seed(cfg, i));
      const Vec x = detail::random_sphere_point(g7, rng);
      const Vec u = detail::random_tangent(g7, x, rng);
      const Oct X = embed_imag(x);
      const Vec Ju = drop_imag(octonion_cross_printed(f, X, embed_imag(u)));
      const Vec JJu = drop_imag(octonion_cross_printed(f, X, embed_imag(Ju)));
      printed_sq = std::max(printed_sq, (JJu + u).cwiseAbs().maxCoeff());
    }
    out.push_back(detail::info(
        "doubled_cross_second_component_as_printed",
        "second doubling component read literally as (alpha betabar - beta alphabar)",
        "flavor=split trials=" + std::to_string(std::min(cfg.trials, 50)),
        std::min(cfg.trials, 50), printed_sq,
        "J^2 = -1 residual under the literal reading; the Cayley-Dickson product"
        " (alpha bbar - beta abar) satisfies all J6 invariants and is used throughout"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "killing",        "index",        "metric14",    "spectrum",
      "integrability",  "weyl",         "conformal",   "sphere_curvature",
      "domega_threeway", "domega_bundle", "tstar",     "dvarpi_type",
      "sigma_holo",     "s64_nearly_kahler"};
  return names;
}

inline std::vector<ClaimReport> run_single_suite(const std::string& name,
                                                 const SuiteConfig& cfg) {
  if (name == "killing") return suite_killing(cfg);
  if (name == "index") return suite_index(cfg);
  if (name == "metric14") return suite_metric14(cfg);
  if (name == "spectrum") return suite_spectrum(cfg);
  if (name == "integrability") return suite_integrability(cfg);
  if (name == "weyl") return suite_weyl(cfg);
  if (name == "conformal") return suite_conformal(cfg);
  if (name == "sphere_curvature") return suite_sphere_curvature(cfg);
  if (name == "domega_threeway") return suite_domega_threeway(cfg);
  if (name == "domega_bundle") return suite_domega_bundle(cfg);
  if (name == "tstar") return suite_tstar(cfg);
  if (name == "dvarpi_type") return suite_dvarpi_type(cfg);
  if (name == "sigma_holo") return suite_sigma_holo(cfg);
  if (name == "s64_nearly_kahler") return suite_s64_nearly_kahler(cfg);
  throw UnknownSuite("unknown suite: " + name);
}

inline std::vector<ClaimReport> run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.fd_step <= 0 || cfg.tol <= 0 || cfg.tol_fd <= 0)
    throw ConfigError("steps and tolerances must be positive");
  if (cfg.suite != "all") return run_single_suite(cfg.suite, cfg);
  std::vector<ClaimReport> all;
  for (const std::string& name : suite_names()) {
    std::vector<ClaimReport> part = run_single_suite(name, cfg);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace twistor
