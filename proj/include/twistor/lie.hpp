#pragma once

#include <vector>

#include "linalg.hpp"

namespace twistor {

/// (u ^ v) w = <v,w> u - <u,w> v.  Always g-skew.
inline Endo wedge(const DiagonalMetric& g, const Vec& u, const Vec& v) {
  const Vec gu = u.cwiseProduct(g.signs());
  const Vec gv = v.cwiseProduct(g.signs());
  return u * gv.transpose() - v * gu.transpose();
}

inline CEndo wedge(const DiagonalMetric& g, const CVec& u, const CVec& v) {
  const CVec s = g.signs().cast<Complex>();
  const CVec gu = u.cwiseProduct(s);
  const CVec gv = v.cwiseProduct(s);
  return u * gv.transpose() - v * gu.transpose();
}

/// Dispatcher for Eigen expressions; selects the real or complex wedge by
/// scalar type so unit-vector and block arguments stay unambiguous.
template <typename DU, typename DV>
auto wedge(const DiagonalMetric& g, const Eigen::MatrixBase<DU>& u,
           const Eigen::MatrixBase<DV>& v) {
  if constexpr (std::is_same_v<typename DU::Scalar, double> &&
                std::is_same_v<typename DV::Scalar, double>)
    return wedge(g, Vec(u), Vec(v));
  else
    return wedge(g, CVec(u.template cast<Complex>()), CVec(v.template cast<Complex>()));
}

/// Wedge basis e_a ^ e_b, a < b, in lexicographic pair order.  Spans so(g).
inline std::vector<Endo> so_basis(const DiagonalMetric& g) {
  const int m = g.dim();
  std::vector<Endo> basis;
  basis.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      basis.push_back(wedge(g, Vec::Unit(m, a), Vec::Unit(m, b)));
  return basis;
}

/// Coordinates of a g-skew M in the wedge basis: the (a,b) entry of
/// e_a ^ e_b is s_b, and distinct pairs occupy distinct entries.
inline Vec so_coordinates(const DiagonalMetric& g, const Endo& M) {
  const int m = g.dim();
  Vec c(m * (m - 1) / 2);
  int k = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) c[k++] = M(a, b) / g.sign(b);
  return c;
}

/// Killing form as the honest trace of ad(A) ad(B) over the wedge basis.
inline double killing_via_ad(const DiagonalMetric& g, const Endo& A, const Endo& B) {
  const int m = g.dim();
  double trace = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Endo E = wedge(g, Vec::Unit(m, a), Vec::Unit(m, b));
      const Endo BE = B * E - E * B;
      const Endo ABE = A * BE - BE * A;
      trace += ABE(a, b) / g.sign(b);
    }
  return trace;
}

/// Closed form for so(k,l): B(A,B) = (k+l-2) tr(AB).  Requires k+l >= 3.
inline double killing_closed_form(int k, int l, const Endo& A, const Endo& B) {
  if (k + l < 3) throw DimensionTooSmall("killing_closed_form: requires k+l >= 3");
  if (A.rows() != k + l || B.rows() != k + l)
    throw DimensionMismatch("killing_closed_form: operand dimension mismatch");
  return (k + l - 2) * (A * B).trace();
}

/// Block rotation [[0,-I],[I,0]] on R^{2p}.
inline Endo rotation_block(int p) {
  Endo J = Endo::Zero(2 * p, 2 * p);
  for (int i = 0; i < p; ++i) {
    J(i, p + i) = -1.0;
    J(p + i, i) = 1.0;
  }
  return J;
}

/// Standard isometric complex structure of R^{2p,2q} (plus-signs first):
/// J_p on the plus block and -J_q on the minus block.
inline Endo standard_J(int p, int q) {
  Endo J = Endo::Zero(2 * (p + q), 2 * (p + q));
  if (p > 0) J.topLeftCorner(2 * p, 2 * p) = rotation_block(p);
  if (q > 0) J.bottomRightCorner(2 * q, 2 * q) = -rotation_block(q);
  return J;
}

/// Random so(g) element with Frobenius norm `scale` (wedge coefficients
/// drawn from the fixed Gaussian stream).
inline Endo random_so_element(const DiagonalMetric& g, GaussianRng& rng, double scale = 0.5) {
  const int m = g.dim();
  Endo A = Endo::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const double c = rng.gauss();
      A(a, b) += c * g.sign(b);
      A(b, a) -= c * g.sign(a);
    }
  const double norm = A.norm();
  if (norm > 0) A *= scale / norm;
  return A;
}

/// Random isometric complex structure in the identity-component orbit of
/// standard_J(p,q): J = exp(S) J_pq exp(-S).
inline Endo random_ocs(int p, int q, GaussianRng& rng, double scale = 0.5) {
  const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
  const Endo S = random_so_element(g, rng, scale);
  const Endo k = matrix_exp(S);
  const Endo kinv = matrix_exp(Endo(-S));
  return k * standard_J(p, q) * kinv;
}

struct Projectors {
  CEndo plus;   // eigenprojector onto the +i eigenspace of J
  CEndo minus;  // eigenprojector onto the -i eigenspace of J
};

/// j+- = (1 -+ iJ)/2.
inline Projectors projectors(const Endo& J) {
  const int m = static_cast<int>(J.rows());
  const CEndo Jc = J.cast<Complex>();
  const CEndo I = CEndo::Identity(m, m);
  const Complex i(0.0, 1.0);
  return {0.5 * (I - i * Jc), 0.5 * (I + i * Jc)};
}

/// Component of C anti-commuting with J: C' = (C + JCJ)/2.
inline Endo anticommuting_part(const Endo& J, const Endo& C) {
  return 0.5 * (C + J * C * J);
}

inline CEndo anticommuting_part(const CEndo& J, const CEndo& C) {
  return 0.5 * (C + J * C * J);
}

/// Euclidean-orthonormal basis of m_J = {A in so(g) : AJ = -JA}, extracted
/// as the SVD kernel of the combined constraint system.  Throws RankFailure
/// if the dimension is not n^2 - n (m = 2n).
inline std::vector<Endo> m_space_basis(const DiagonalMetric& g, const Endo& J,
                                       double svd_threshold = 1e-10) {
  const int m = g.dim();
  if (m % 2 != 0) throw DimensionMismatch("m_space_basis: odd-dimensional space");
  const int n = m / 2;
  const int unknowns = m * m;
  Endo C = Endo::Zero(2 * unknowns, unknowns);
  const auto idx = [m](int r, int c) { return r + m * c; };  // column-major vec
  // rows 0..m^2-1:  (G A + A^T G)_{ij} = s_i A_{ij} + s_j A_{ji}
  // rows m^2..:     (A J + J A)_{ij}
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int row_skew = i + m * j;
      C(row_skew, idx(i, j)) += g.sign(i);
      C(row_skew, idx(j, i)) += g.sign(j);
      const int row_anti = unknowns + i + m * j;
      for (int k = 0; k < m; ++k) {
        C(row_anti, idx(i, k)) += J(k, j);
        C(row_anti, idx(k, j)) += J(i, k);
      }
    }
  Eigen::JacobiSVD<Endo> svd(C, Eigen::ComputeFullV);
  const double cutoff = svd.singularValues()[0] * svd_threshold;
  std::vector<Endo> basis;
  for (int k = 0; k < unknowns; ++k) {
    const double sigma = k < svd.singularValues().size() ? svd.singularValues()[k] : 0.0;
    if (sigma <= cutoff) {
      Endo B(m, m);
      for (int c = 0; c < m; ++c) B.col(c) = svd.matrixV().col(k).segment(c * m, m);
      basis.push_back(std::move(B));
    }
  }
  if (static_cast<int>(basis.size()) != n * n - n)
    throw RankFailure("m_space_basis: kernel dimension " + std::to_string(basis.size()) +
                      ", expected " + std::to_string(n * n - n));
  return basis;
}

/// Fibre metric on m_J inside so of a 2n-dimensional space: -(2n-2) tr(AB).
inline double fiber_metric(int n, const Endo& A, const Endo& B) {
  return -(2 * n - 2) * (A * B).trace();
}

inline int fiber_index_formula(int p, int q) { return q * q - q + 2 * p * q; }

/// Inertia of the fibre metric on m_J for the standard structure of R^{2p,2q}.
inline Inertia fiber_metric_inertia(int p, int q, double tol = 1e-9) {
  const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
  const auto basis = m_space_basis(g, standard_J(p, q));
  const int d = static_cast<int>(basis.size());
  const int n = p + q;
  Endo gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = fiber_metric(n, basis[i], basis[j]);
  return sym_index(gram, tol);
}

/// Curvature of the homogeneous fibre as a symmetric space: R(A,B)C = -[[A,B],C].
inline Endo symmetric_space_curvature(const Endo& A, const Endo& B, const Endo& C) {
  const Endo AB = A * B - B * A;
  return -(AB * C - C * AB);
}

}  // namespace twistor
