#pragma once

#include <utility>
#include <vector>

#include "lie.hpp"

namespace twistor {

/// Curvature-type operator: a pairing (X,Y) -> R_{X,Y} in so(g), stored on
/// basis pairs a < b and extended bilinearly/antisymmetrically.
class CurvatureOperator {
 public:
  CurvatureOperator(DiagonalMetric g, std::vector<std::vector<Endo>> comp)
      : g_(std::move(g)), comp_(std::move(comp)) {}

  static CurvatureOperator zero(const DiagonalMetric& g) {
    const int m = g.dim();
    std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m, Endo::Zero(m, m)));
    return CurvatureOperator(g, std::move(comp));
  }

  int dim() const { return g_.dim(); }
  const DiagonalMetric& metric() const { return g_; }

  const Endo& at(int a, int b) const { return comp_[a][b]; }
  Endo& at(int a, int b) { return comp_[a][b]; }

  /// R_{e_a, e_b} with antisymmetric extension to a >= b.
  Endo pair(int a, int b) const {
    if (a == b) return Endo::Zero(dim(), dim());
    return a < b ? comp_[a][b] : Endo(-comp_[b][a]);
  }

  Endo evaluate(const Vec& X, const Vec& Y) const {
    const int m = dim();
    Endo R = Endo::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const double w = X[a] * Y[b] - X[b] * Y[a];
        if (w != 0.0) R += w * comp_[a][b];
      }
    return R;
  }

  CEndo evaluate(const CVec& X, const CVec& Y) const {
    const int m = dim();
    CEndo R = CEndo::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const Complex w = X[a] * Y[b] - X[b] * Y[a];
        if (w != 0.0) R += w * comp_[a][b].cast<Complex>();
      }
    return R;
  }

 private:
  DiagonalMetric g_;
  std::vector<std::vector<Endo>> comp_;  // comp_[a][b] valid for a < b
};

/// Vector-valued torsion pairing (X,Y) -> T(X,Y), same storage scheme.
class TorsionOperator {
 public:
  TorsionOperator(DiagonalMetric g, std::vector<std::vector<Vec>> comp)
      : g_(std::move(g)), comp_(std::move(comp)) {}

  static TorsionOperator zero(const DiagonalMetric& g) {
    const int m = g.dim();
    std::vector<std::vector<Vec>> comp(m, std::vector<Vec>(m, Vec::Zero(m)));
    return TorsionOperator(g, std::move(comp));
  }

  int dim() const { return g_.dim(); }
  Vec& at(int a, int b) { return comp_[a][b]; }

  CVec evaluate(const CVec& X, const CVec& Y) const {
    const int m = dim();
    CVec T = CVec::Zero(m);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const Complex w = X[a] * Y[b] - X[b] * Y[a];
        if (w != 0.0) T += w * comp_[a][b].cast<Complex>();
      }
    return T;
  }

 private:
  DiagonalMetric g_;
  std::vector<std::vector<Vec>> comp_;
};

/// R_{X,Y} = X ^ Y, i.e. R_{X,Y}Z = <Y,Z>X - <X,Z>Y (constant curvature +1).
inline CurvatureOperator constant_curvature(const DiagonalMetric& g) {
  const int m = g.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      comp[a][b] = wedge(g, Vec::Unit(m, a), Vec::Unit(m, b));
  return CurvatureOperator(g, std::move(comp));
}

/// Natural so-action of J on curvature-type tensors:
/// (J.R)(X,Y) = J R(X,Y) - R(JX,Y) - R(X,JY) - R(X,Y) J.
inline CurvatureOperator j0_action(const Endo& J, const CurvatureOperator& R) {
  const int m = R.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Vec ea = Vec::Unit(m, a), eb = Vec::Unit(m, b);
      const Endo Rab = R.at(a, b);
      comp[a][b] = J * Rab - R.evaluate(Vec(J * ea), eb) - R.evaluate(ea, Vec(J * eb)) - Rab * J;
    }
  return CurvatureOperator(R.metric(), std::move(comp));
}

namespace detail {

/// Flatten a curvature-type tensor to coordinates: pair index (a<b) times
/// wedge-basis coordinates of the so-valued component.
inline Vec flatten_curvature(const CurvatureOperator& R) {
  const int m = R.dim();
  const int P = m * (m - 1) / 2;
  Vec out(P * P);
  int t = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      out.segment((t++) * P, P) = so_coordinates(R.metric(), R.at(a, b));
  return out;
}

}  // namespace detail

/// Spectrum of R -> J.R on the full space of antisymmetric so-valued
/// pairings.  Throws SpectrumViolation if any eigenvalue strays from
/// {0, +-2i, +-4i} by more than tol.
inline std::vector<Complex> action_spectrum(const DiagonalMetric& g, const Endo& J,
                                            double tol = 1e-7) {
  const int m = g.dim();
  const int P = m * (m - 1) / 2;
  const int D = P * P;
  const auto basis = so_basis(g);
  Endo M(D, D);
  int col = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int k = 0; k < P; ++k) {
        CurvatureOperator R = CurvatureOperator::zero(g);
        R.at(a, b) = basis[k];
        M.col(col++) = detail::flatten_curvature(j0_action(J, R));
      }
  Eigen::EigenSolver<Endo> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("action_spectrum: QR iteration did not converge");
  std::vector<Complex> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + D);
  for (const Complex& l : ev) {
    const double d0 = std::abs(l);
    const double d2 = std::min(std::abs(l - Complex(0, 2)), std::abs(l + Complex(0, 2)));
    const double d4 = std::min(std::abs(l - Complex(0, 4)), std::abs(l + Complex(0, 4)));
    if (std::min({d0, d2, d4}) > tol)
      throw SpectrumViolation("action_spectrum: eigenvalue (" + std::to_string(l.real()) +
                              ", " + std::to_string(l.imag()) + "i) outside {0,+-2i,+-4i}");
  }
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return ev;
}

/// Projection of R onto the +-4i eigenspaces of the J-action:
/// (X,Y) -> j+ R(j-X, j-Y) j-  +  j- R(j+X, j+Y) j+  (real for real R).
inline CurvatureOperator four_i_component(const Endo& J, const CurvatureOperator& R) {
  const int m = R.dim();
  const auto pr = projectors(J);
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const CVec ea = CVec::Unit(m, a), eb = CVec::Unit(m, b);
      const CEndo S = pr.plus * R.evaluate(CVec(pr.minus * ea), CVec(pr.minus * eb)) * pr.minus +
                      pr.minus * R.evaluate(CVec(pr.plus * ea), CVec(pr.plus * eb)) * pr.plus;
      comp[a][b] = S.real();
    }
  return CurvatureOperator(R.metric(), std::move(comp));
}

/// Residuals of the two fibre-point integrability conditions for an
/// isometric complex structure j:  max |j+ T(j-X, j-Y)| and
/// max |j+ R(j-X, j-Y) j-| over complexified basis pairs.
inline std::pair<double, double> integrability_residual(const Endo& j,
                                                        const CurvatureOperator& R,
                                                        const TorsionOperator& T) {
  const int m = R.dim();
  const auto pr = projectors(j);
  double rT = 0.0, rR = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const CVec u = pr.minus * CVec::Unit(m, a);
      const CVec v = pr.minus * CVec::Unit(m, b);
      rT = std::max(rT, CVec(pr.plus * T.evaluate(u, v)).cwiseAbs().maxCoeff());
      rR = std::max(rR, max_abs(CEndo(pr.plus * R.evaluate(u, v) * pr.minus)));
    }
  return {rT, rR};
}

/// max over basis triples of |sum_cyc R_{e_a,e_b} e_c| (first Bianchi).
inline double bianchi_residual(const CurvatureOperator& R) {
  const int m = R.dim();
  double res = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const Vec v = R.pair(a, b).col(c) + R.pair(b, c).col(a) + R.pair(c, a).col(b);
        res = std::max(res, v.cwiseAbs().maxCoeff());
      }
  return res;
}

namespace detail {

/// Kulkarni-Nomizu product of symmetric bilinear forms, as a (0,4) array
/// accessor: (h @ k)(X,Y,Z,W) = h(X,Z)k(Y,W) + h(Y,W)k(X,Z)
///                            - h(X,W)k(Y,Z) - h(Y,Z)k(X,W).
inline double kulkarni_nomizu(const Endo& h, const Endo& k, int a, int b, int c, int d) {
  return h(a, c) * k(b, d) + h(b, d) * k(a, c) - h(a, d) * k(b, c) - h(b, c) * k(a, d);
}

}  // namespace detail

/// Weyl (totally trace-free) part of an algebraic curvature tensor.
/// Convention fixed by: weyl(constant_curvature) = 0 and Ricci-trace-freeness
/// of the output, with Ric(X,Y) = sum_k eps_k <R_{e_k,X}Y, e_k>.
inline CurvatureOperator weyl_tensor(const CurvatureOperator& R, double bianchi_tol = 1e-8) {
  const int m = R.dim();
  if (m < 4) throw DimensionTooSmall("weyl_tensor: requires dimension >= 4");
  if (bianchi_residual(R) > bianchi_tol)
    throw Error("weyl_tensor: input violates the first Bianchi identity");
  const DiagonalMetric& g = R.metric();
  // lowered tensor R4(a,b,c,d) = <R_{e_a,e_b} e_c, e_d> = s_d (R_ab)_{d,c}
  const auto R4 = [&](int a, int b, int c, int d) {
    return g.sign(d) * R.pair(a, b)(d, c);
  };
  Endo ric = Endo::Zero(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += g.sign(k) * R4(k, b, c, k);
      ric(b, c) = acc;
    }
  double scal = 0.0;
  for (int j = 0; j < m; ++j) scal += g.sign(j) * ric(j, j);
  const Endo G = g.gram();
  const Endo ric0 = ric - (scal / m) * G;
  const double c_ric = 1.0 / (m - 2);
  const double c_scal = scal / (2.0 * m * (m - 1));
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Endo W(m, m);
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const double w4 = R4(a, b, c, d) +
                            c_ric * detail::kulkarni_nomizu(ric0, G, a, b, c, d) +
                            c_scal * detail::kulkarni_nomizu(G, G, a, b, c, d);
          W(d, c) = g.sign(d) * w4;
        }
      comp[a][b] = std::move(W);
    }
  return CurvatureOperator(g, std::move(comp));
}

/// Difference tensor of a conformal change, A_X Y = df(X)Y + df(Y)X
/// - g(X,Y) grad f, returned as the list of endomorphisms A_{e_a}.
/// Throws InconsistentGradient unless grad f is the metric raise of df.
inline std::vector<Endo> conformal_difference_tensor(const DiagonalMetric& g, const Vec& df,
                                                     const Vec& gradf, double tol = 1e-12) {
  const int m = g.dim();
  if (df.size() != m || gradf.size() != m)
    throw DimensionMismatch("conformal_difference_tensor: operand dimension mismatch");
  if ((gradf - g.raise(df)).cwiseAbs().maxCoeff() > tol)
    throw InconsistentGradient("conformal_difference_tensor: grad f != raise(df)");
  std::vector<Endo> A(m);
  for (int a = 0; a < m; ++a) {
    A[a] = df[a] * Endo::Identity(m, m) + Vec::Unit(m, a) * df.transpose() -
           g.sign(a) * gradf * Vec::Unit(m, a).transpose();
  }
  return A;
}

/// max over complexified basis vectors Y of |j+ A_{j-Y} j-| for a bilinear
/// endomorphism-valued tensor given by its values on basis directions.
inline double acs_invariance_residual(const Endo& j, const std::vector<Endo>& A) {
  const int m = static_cast<int>(A.size());
  const auto pr = projectors(j);
  double res = 0.0;
  for (int b = 0; b < m; ++b) {
    const CVec Y = pr.minus * CVec::Unit(m, b);
    CEndo AY = CEndo::Zero(m, m);
    for (int c = 0; c < m; ++c) AY += Y[c] * A[c].cast<Complex>();
    res = std::max(res, max_abs(CEndo(pr.plus * AY * pr.minus)));
  }
  return res;
}

}  // namespace twistor
