#pragma once

#include <utility>
#include <vector>

#include "lie.hpp"

namespace twistor {

/// Metric of the ambient-plus-one space R.1 + R^{2p+1,2q}: the unit
/// direction (index 0, sign +1) followed by the ambient signs.
inline DiagonalMetric plus_one_metric(const DiagonalMetric& ambient) {
  Vec s(ambient.dim() + 1);
  s[0] = 1.0;
  s.tail(ambient.dim()) = ambient.signs();
  return DiagonalMetric(std::move(s));
}

inline Vec embed_vector(const Vec& ambient) {
  Vec v(ambient.size() + 1);
  v[0] = 0.0;
  v.tail(ambient.size()) = ambient;
  return v;
}

inline Vec drop_vector(const Vec& big) { return big.tail(big.size() - 1); }

/// A point of the twistor space of S^{2n}_{2q}: an isometric complex
/// structure J of the plus-one space.  The base point is x = J(1), which is
/// automatically a unit vector orthogonal to 1.
struct TwistorPoint {
  DiagonalMetric big;
  Endo J;

  int n() const { return (big.dim() - 2) / 2; }
  Vec base() const { return J.col(0); }  // in plus-one coordinates
};

inline double ocs_residual(const DiagonalMetric& g, const Endo& J) {
  const Endo G = g.gram();
  const double orth = max_abs(Endo(J.transpose() * G * J - G));
  const double square = max_abs(Endo(J * J + Endo::Identity(g.dim(), g.dim())));
  return std::max(orth, square);
}

inline TwistorPoint make_twistor_point(DiagonalMetric big, Endo J, double tol = 1e-9) {
  if (big.dim() % 2 != 0 || big.dim() < 4)
    throw DimensionMismatch("make_twistor_point: plus-one space must have even dim >= 4");
  if (big.sign(0) != 1.0)
    throw Error("make_twistor_point: unit direction must carry sign +1");
  if (J.rows() != big.dim() || J.cols() != big.dim())
    throw DimensionMismatch("make_twistor_point: J dimension mismatch");
  if (ocs_residual(big, J) > tol)
    throw IncompatibleJ("make_twistor_point: J is not an isometric complex structure");
  return {std::move(big), std::move(J)};
}

/// Extend a tangent-space complex structure j at x (ambient coordinates) to
/// a twistor point: J(1) = x, J(x) = -1, J = j on the tangent space.
inline TwistorPoint extend_cs(const DiagonalMetric& ambient, const Vec& x, const Endo& j,
                              double tol = 1e-9) {
  const int m = ambient.dim();
  if (x.size() != m || j.rows() != m || j.cols() != m)
    throw DimensionMismatch("extend_cs: operand dimension mismatch");
  if (std::abs(ambient.inner(x, x) - 1.0) > tol)
    throw NotOnSphere("extend_cs: base point is not a unit vector");
  const Endo P = Endo::Identity(m, m) - x * (x.cwiseProduct(ambient.signs())).transpose();
  const Endo jt = P * j * P;  // clean restriction to the tangent space
  // compatibility of j with the induced structure of T_x
  const Endo G = ambient.gram();
  const double orth = max_abs(Endo(jt.transpose() * G * jt - P.transpose() * G * P));
  const double square = max_abs(Endo(jt * jt + P));
  if (std::max(orth, square) > tol)
    throw IncompatibleJ("extend_cs: j is not an isometric complex structure of T_x");
  const DiagonalMetric big = plus_one_metric(ambient);
  const int M = m + 1;
  const Vec xh = embed_vector(x);
  Endo J = Endo::Zero(M, M);
  J.bottomRightCorner(m, m) = jt;
  J += xh * Vec::Unit(M, 0).transpose();                       // J(1) = x
  J -= Vec::Unit(M, 0) * (xh.cwiseProduct(big.signs())).transpose();  // J(x) = -1
  return make_twistor_point(big, std::move(J), tol * 10);
}

/// Inverse of extend_cs: recover (x, j) in ambient coordinates.
inline std::pair<Vec, Endo> restrict_cs(const TwistorPoint& tp) {
  const int m = tp.big.dim() - 1;
  const Vec x = drop_vector(tp.base());
  const DiagonalMetric ambient(Vec(tp.big.signs().tail(m)));
  const Endo P = Endo::Identity(m, m) - x * (x.cwiseProduct(ambient.signs())).transpose();
  const Endo j = P * tp.J.bottomRightCorner(m, m) * P;
  return {x, j};
}

/// Tangent vector to the twistor space at a point J, split into the
/// horizontal component (a base tangent vector in plus-one coordinates) and
/// the vertical component (an endomorphism anti-commuting with J and
/// annihilating both 1 and J1).
struct TwistorTangent {
  Vec h;
  Endo v;
};

/// Horizontal lift of a base tangent vector X (plus-one coordinates,
/// orthogonal to both 1 and J1):
///   H_X(1) = X, H_X(J1) = -JX, H_X(Y) = -<X,Y> 1 + <JX,Y> J1.
inline Endo horizontal_lift(const TwistorPoint& tp, const Vec& X, double tol = 1e-9) {
  const Vec e0 = Vec::Unit(tp.big.dim(), 0);
  const Vec xh = tp.base();
  if (std::abs(tp.big.inner(X, e0)) > tol || std::abs(tp.big.inner(X, xh)) > tol)
    throw NotTangent("horizontal_lift: X must be orthogonal to 1 and J1");
  return wedge(tp.big, X, e0) + wedge(tp.big, xh, Vec(tp.J * X));
}

inline CEndo horizontal_lift(const TwistorPoint& tp, const CVec& X) {
  const CVec e0 = CVec::Unit(tp.big.dim(), 0);
  const CVec xh = tp.base().cast<Complex>();
  return wedge(tp.big, X, e0) + wedge(tp.big, xh, CVec(tp.J.cast<Complex>() * X));
}

/// Splits A in m_J into horizontal vector A(1) and vertical remainder.
inline TwistorTangent split_tangent(const TwistorPoint& tp, const Endo& A) {
  const Vec h = A.col(0);  // A(1)
  return {h, Endo(A - horizontal_lift(tp, h))};
}

inline Endo vertical_part(const TwistorPoint& tp, const Endo& A) {
  return split_tangent(tp, A).v;
}

inline Endo join_tangent(const TwistorPoint& tp, const TwistorTangent& t) {
  return horizontal_lift(tp, t.h) + t.v;
}

/// Canonical almost complex structure of the twistor space at a fibre point:
/// rotate the horizontal component by J, left-multiply the vertical one.
inline TwistorTangent twistor_acs(const TwistorPoint& tp, const TwistorTangent& t) {
  return {Vec(tp.J * t.h), Endo(tp.J * t.v)};
}

/// One-parameter family of fibre-bundle metrics,
///   G^t(A,B) = 8n <A1,B1> + t * g_f(A',B'),   g_f(U,V) = -(2n-2) tr(UV).
inline double G_t(const TwistorPoint& tp, const TwistorTangent& A, const TwistorTangent& B,
                  double t) {
  const int n = tp.n();
  return 8.0 * n * tp.big.inner(A.h, B.h) + t * fiber_metric(n, A.v, B.v);
}

/// Killing-form metric of the fibre one level up: -(2n) tr(AB) on m_J of the
/// plus-one space.
inline double killing_metric_plus_one(const TwistorPoint& tp, const Endo& A, const Endo& B) {
  return fiber_metric(tp.n() + 1, A, B);
}

/// Torsion of the canonical bundle connection:
///   horizontal part  -A'(B1) + B'(A1),
///   vertical part    (R_{A1,B1})' with R the constant base curvature and
///                    ' the anti-commuting projection.
inline TwistorTangent torsion_D(const TwistorPoint& tp, const TwistorTangent& A,
                                const TwistorTangent& B) {
  const Vec h = Vec(-A.v * B.h + B.v * A.h);
  const Endo R = wedge(tp.big, A.h, B.h);
  return {h, anticommuting_part(tp.J, R)};
}

/// d Omega via the torsion identity for a parallel 2-form:
///   dOmega(A,B,C) = sum_cyc Omega(T^D(A,B), C),  Omega(U,V) = G^t(J U, V).
inline double d_Omega_cyclic(const TwistorPoint& tp, const TwistorTangent& A,
                             const TwistorTangent& B, const TwistorTangent& C, double t) {
  const auto omega = [&](const TwistorTangent& U, const TwistorTangent& V) {
    return G_t(tp, twistor_acs(tp, U), V, t);
  };
  return omega(torsion_D(tp, A, B), C) + omega(torsion_D(tp, B, C), A) +
         omega(torsion_D(tp, C, A), B);
}

/// Closed-form evaluation on two horizontal lifts and one vertical tangent:
///   dOmega(X,Y,A) = -16n g(JAX, Y) + t g_f(J (X^Y)', A).
inline double d_Omega_two_horizontal(const TwistorPoint& tp, const Vec& X, const Vec& Y,
                                     const Endo& Av, double t) {
  const int n = tp.n();
  const double first = -16.0 * n * tp.big.inner(Vec(tp.J * Av * X), Y);
  const Endo Rprime = anticommuting_part(tp.J, wedge(tp.big, X, Y));
  const double second = t * fiber_metric(n, Endo(tp.J * Rprime), Av);
  return first + second;
}

/// Random draws at a fibre point -------------------------------------------

inline TwistorPoint random_twistor_point(int p, int q, GaussianRng& rng, double scale = 0.5) {
  const DiagonalMetric big = DiagonalMetric::standard(2 * (p + 1), 2 * q);
  const Endo S = random_so_element(big, rng, scale);
  const Endo J = matrix_exp(S) * standard_J(p + 1, q) * matrix_exp(Endo(-S));
  return make_twistor_point(big, J);
}

/// Random element of m_J (tangent to the fibre one level up), unit Frobenius
/// norm times scale.
inline Endo random_m_element(const TwistorPoint& tp, GaussianRng& rng, double scale = 1.0) {
  const Endo C = random_so_element(tp.big, rng, 1.0);
  Endo A = anticommuting_part(tp.J, C);
  const double norm = A.norm();
  if (norm > 1e-12) A *= scale / norm;
  return A;
}

/// Random base tangent vector (orthogonal to 1 and J1), Euclidean-normalised.
inline Vec random_base_tangent(const TwistorPoint& tp, GaussianRng& rng) {
  const Vec e0 = Vec::Unit(tp.big.dim(), 0);
  const Vec xh = tp.base();
  Vec v = rng.gauss_vector(tp.big.dim());
  v -= tp.big.inner(v, e0) * e0;
  v -= tp.big.inner(v, xh) * xh;
  const double norm = v.norm();
  if (norm > 1e-12) v /= norm;
  return v;
}

inline TwistorTangent random_vertical(const TwistorPoint& tp, GaussianRng& rng) {
  Endo v = vertical_part(tp, random_m_element(tp, rng));
  const double norm = v.norm();
  if (norm > 1e-12) v /= norm;
  return {Vec::Zero(tp.big.dim()), std::move(v)};
}

struct TStarFit {
  double t_star = 0.0;
  double residual_at_t_star = 0.0;
  double t_printed = 0.0;            // n/(n-1)
  double residual_at_t_printed = 0.0;
};

/// Least-squares t making dOmega vanish over random two-horizontal samples.
/// dOmega is affine in t per sample, so the fit is exact up to roundoff.
inline TStarFit solve_t_star(int p, int q, GaussianRng& rng, int trials = 100) {
  const int n = p + q;
  if (n < 2) throw UnsupportedDimension("solve_t_star: requires p+q >= 2");
  std::vector<double> a(trials), b(trials);
  double sum_ab = 0.0, sum_bb = 0.0;
  for (int i = 0; i < trials; ++i) {
    const TwistorPoint tp = random_twistor_point(p, q, rng);
    const Vec X = random_base_tangent(tp, rng);
    const Vec Y = random_base_tangent(tp, rng);
    const TwistorTangent A = random_vertical(tp, rng);
    const TwistorTangent HX{X, Endo::Zero(tp.big.dim(), tp.big.dim())};
    const TwistorTangent HY{Y, Endo::Zero(tp.big.dim(), tp.big.dim())};
    a[i] = d_Omega_cyclic(tp, HX, HY, A, 0.0);
    b[i] = d_Omega_cyclic(tp, HX, HY, A, 1.0) - a[i];
    sum_ab += a[i] * b[i];
    sum_bb += b[i] * b[i];
  }
  if (sum_bb < 1e-24 * trials)
    throw DegenerateSamples("solve_t_star: no t-dependence in sampled values");
  TStarFit fit;
  fit.t_star = -sum_ab / sum_bb;
  fit.t_printed = static_cast<double>(n) / (n - 1);
  double r_star = 0.0, r_printed = 0.0;
  for (int i = 0; i < trials; ++i) {
    r_star = std::max(r_star, std::abs(a[i] + fit.t_star * b[i]));
    r_printed = std::max(r_printed, std::abs(a[i] + fit.t_printed * b[i]));
  }
  fit.residual_at_t_star = r_star;
  fit.residual_at_t_printed = r_printed;
  return fit;
}

/// Pullback of the base Kaehler pairing: varpi(A,B) = <J(A1), B1>.
inline double varpi(const TwistorPoint& tp, const TwistorTangent& A, const TwistorTangent& B) {
  return tp.big.inner(Vec(tp.J * A.h), B.h);
}

inline double d_varpi(const TwistorPoint& tp, const TwistorTangent& A, const TwistorTangent& B,
                      const TwistorTangent& C) {
  const auto term = [&](const TwistorTangent& U, const TwistorTangent& V,
                        const TwistorTangent& W) { return varpi(tp, torsion_D(tp, U, V), W); };
  return term(A, B, C) + term(B, C, A) + term(C, A, B);
}

/// Complexified twistor tangents, for type decompositions ------------------

struct TwistorTangentC {
  CVec h;
  CEndo v;
};

inline TwistorTangentC complexify(const TwistorTangent& t) {
  return {t.h.cast<Complex>(), t.v.cast<Complex>()};
}

inline TwistorTangentC split_tangent(const TwistorPoint& tp, const CEndo& A) {
  const CVec h = A.col(0);
  return {h, CEndo(A - horizontal_lift(tp, h))};
}

inline TwistorTangentC torsion_D(const TwistorPoint& tp, const TwistorTangentC& A,
                                 const TwistorTangentC& B) {
  const CVec h = CVec(-A.v * B.h + B.v * A.h);
  const CEndo R = wedge(tp.big, A.h, B.h);
  return {h, anticommuting_part(CEndo(tp.J.cast<Complex>()), R)};
}

inline Complex varpi(const TwistorPoint& tp, const TwistorTangentC& A, const TwistorTangentC& B) {
  return tp.big.inner(CVec(tp.J.cast<Complex>() * A.h), B.h);
}

inline Complex d_varpi(const TwistorPoint& tp, const TwistorTangentC& A, const TwistorTangentC& B,
                       const TwistorTangentC& C) {
  const auto term = [&](const TwistorTangentC& U, const TwistorTangentC& V,
                        const TwistorTangentC& W) { return varpi(tp, torsion_D(tp, U, V), W); };
  return term(A, B, C) + term(B, C, A) + term(C, A, B);
}

struct VarpiTypeNorms {
  double norm_30_03 = 0.0;  // (3,0) + (0,3) component
  double norm_21_12 = 0.0;  // (2,1) + (1,2) component
};

/// Basis of m_J adapted to J-pairs: returns C_s with {C_s, J C_s} a real
/// basis of m_J.  Built by Hermitian Gram-Schmidt on the +i eigenspace of
/// left multiplication by J (A - iJA); left multiplication by J is not a
/// Frobenius isometry for indefinite metrics, so a purely real pairing
/// scheme would miscount the pairs.
inline std::vector<Endo> adapted_m_basis(const TwistorPoint& tp) {
  const std::vector<Endo> mb = m_space_basis(tp.big, tp.J);
  const int d = static_cast<int>(mb.size()) / 2;
  const CEndo Jc = tp.J.cast<Complex>();
  const Complex i01(0.0, 1.0);
  const auto hdot = [](const CEndo& A, const CEndo& B) {
    return (A.conjugate().cwiseProduct(B)).sum();
  };
  std::vector<CEndo> onb;
  std::vector<Endo> half;
  for (const Endo& B : mb) {
    if (static_cast<int>(half.size()) == d) break;
    CEndo Z = B.cast<Complex>() - i01 * (Jc * B.cast<Complex>());
    for (const CEndo& Q : onb) Z -= hdot(Q, Z) * Q;
    const double nn = Z.norm();
    if (nn < 1e-8) continue;
    Z /= nn;
    // either the real or the imaginary part regenerates Z as C - iJC;
    // keep the better conditioned of the two
    const Endo X = Z.real();
    const Endo Y = Endo((i01 * Z).real());
    Endo C = (X.norm() >= Y.norm()) ? X : Y;
    C /= C.norm();
    onb.push_back(std::move(Z));
    half.push_back(std::move(C));
  }
  if (static_cast<int>(half.size()) != d)
    throw RankFailure("adapted_m_basis: +i eigenspace not spanned");
  return half;
}

/// Norms of the type components of d(varpi) at a fibre point: evaluate the
/// complex-trilinear extension on (+i)-eigenvectors P_s = C_s - i J C_s of
/// the canonical structure and their conjugates.
inline VarpiTypeNorms d_varpi_type(const TwistorPoint& tp) {
  const std::vector<Endo> half = adapted_m_basis(tp);
  const CEndo Jc = tp.J.cast<Complex>();
  const Complex i(0.0, 1.0);
  std::vector<TwistorTangentC> plus, minus;
  for (const Endo& C : half) {
    const CEndo P = C.cast<Complex>() - i * (Jc * C.cast<Complex>());
    plus.push_back(split_tangent(tp, P));
    minus.push_back(split_tangent(tp, CEndo(P.conjugate())));
  }
  const int d = static_cast<int>(plus.size());
  VarpiTypeNorms out;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      for (int c = b + 1; c < d; ++c)
        out.norm_30_03 = std::max(out.norm_30_03,
                                  std::abs(d_varpi(tp, plus[a], plus[b], plus[c])));
      for (int c = 0; c < d; ++c)
        out.norm_21_12 = std::max(out.norm_21_12,
                                  std::abs(d_varpi(tp, plus[a], plus[b], minus[c])));
    }
  return out;
}

/// Isometry action on fibre points, Sigma_b(J) = b J b^{-1} ----------------

inline Endo isometry_inverse(const DiagonalMetric& g, const Endo& b) {
  const Endo G = g.gram();
  return G * b.transpose() * G;  // G^2 = 1
}

inline TwistorPoint sigma_action(const TwistorPoint& tp, const Endo& b, double tol = 1e-9) {
  const Endo G = tp.big.gram();
  if (max_abs(Endo(b.transpose() * G * b - G)) > tol)
    throw NotIsometry("sigma_action: b does not preserve the plus-one metric");
  return make_twistor_point(tp.big, Endo(b * tp.J * isometry_inverse(tp.big, b)), 1e-6);
}

/// Cauchy-Riemann residual of Sigma_b at a fibre point: the differential is
/// A -> b A b^{-1}, which must intertwine the canonical structures.
inline double sigma_cr_residual(const TwistorPoint& tp, const Endo& b, const Endo& A,
                                double tol = 1e-9) {
  const Endo binv = isometry_inverse(tp.big, b);
  const TwistorPoint image = sigma_action(tp, b, tol);
  const Endo lhs = b * (tp.J * A) * binv;
  const Endo rhs = image.J * (b * A * binv);
  return max_abs(Endo(lhs - rhs));
}

/// exp of an ambient so-element, extended to fix the unit direction.
inline Endo random_sphere_isometry(const DiagonalMetric& ambient, GaussianRng& rng,
                                   double scale = 0.5) {
  const Endo S = random_so_element(ambient, rng, scale);
  const int m = ambient.dim();
  Endo big = Endo::Identity(m + 1, m + 1);
  big.bottomRightCorner(m, m) = matrix_exp(S);
  return big;
}

}  // namespace twistor
