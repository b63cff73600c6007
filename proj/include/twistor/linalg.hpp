#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace twistor {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Endo = Eigen::MatrixXd;   // endomorphism in coordinates
using CEndo = Eigen::MatrixXcd;
using Complex = std::complex<double>;

struct Signature {
  int plus = 0;
  int minus = 0;
  int dim() const { return plus + minus; }
  bool operator==(const Signature&) const = default;
};

/// Non-degenerate diagonal bilinear form diag(s_1,...,s_m), s_k = +-1.
/// The sign order is arbitrary; helpers that need a canonical layout build
/// it explicitly.
class DiagonalMetric {
 public:
  explicit DiagonalMetric(Vec signs) : signs_(std::move(signs)) {
    for (int k = 0; k < signs_.size(); ++k)
      if (signs_[k] != 1.0 && signs_[k] != -1.0)
        throw Error("DiagonalMetric: signs must be +-1");
  }

  /// plus-signs first, then minus-signs.
  static DiagonalMetric standard(int plus, int minus) {
    Vec s(plus + minus);
    s.head(plus).setOnes();
    s.tail(minus).setConstant(-1.0);
    return DiagonalMetric(std::move(s));
  }

  int dim() const { return static_cast<int>(signs_.size()); }
  double sign(int k) const { return signs_[k]; }
  const Vec& signs() const { return signs_; }

  Signature signature() const {
    Signature s;
    for (int k = 0; k < dim(); ++k) (signs_[k] > 0 ? s.plus : s.minus)++;
    return s;
  }

  Endo gram() const { return signs_.asDiagonal(); }

  double inner(const Vec& u, const Vec& v) const {
    check(u, v);
    return u.cwiseProduct(signs_).dot(v);
  }

  /// Complex-bilinear extension (no conjugation).
  Complex inner(const CVec& u, const CVec& v) const {
    if (u.size() != dim() || v.size() != dim())
      throw DimensionMismatch("inner: complex operand dimension mismatch");
    Complex acc = 0;
    for (int k = 0; k < dim(); ++k) acc += signs_[k] * u[k] * v[k];
    return acc;
  }

  /// Dispatcher for Eigen expressions (unit vectors, blocks, fixed-size
  /// vectors): picks the real or complex-bilinear overload by scalar type.
  template <typename DU, typename DV>
  auto inner(const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DV>& v) const {
    if constexpr (std::is_same_v<typename DU::Scalar, double> &&
                  std::is_same_v<typename DV::Scalar, double>)
      return inner(Vec(u), Vec(v));
    else
      return inner(CVec(u.template cast<Complex>()), CVec(v.template cast<Complex>()));
  }

  /// Metric raise of a covector (diagonal metric: componentwise sign flip).
  Vec raise(const Vec& df) const {
    check(df, df);
    return df.cwiseProduct(signs_);
  }

 private:
  void check(const Vec& u, const Vec& v) const {
    if (u.size() != dim() || v.size() != dim())
      throw DimensionMismatch("inner: operand dimension mismatch");
  }
  Vec signs_;
};

inline double max_abs(const Endo& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const CEndo& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

/// max_{a,b} |<A e_a, e_b> + <e_a, A e_b>|
inline double g_skew_residual(const DiagonalMetric& g, const Endo& A) {
  const Endo G = g.gram();
  return max_abs(Endo(G * A + A.transpose() * G));
}

inline bool is_g_skew(const DiagonalMetric& g, const Endo& A, double tol = 1e-10) {
  return g_skew_residual(g, A) <= tol;
}

struct OrthonormalSet {
  std::vector<Vec> vectors;
  std::vector<double> signs;  // <b_k, b_k> = signs[k]
};

/// Indefinite Gram-Schmidt with pivoting on max |<v,v>| among the remaining
/// candidates. Throws DegenerateSubspace when every remaining candidate is
/// numerically null (degenerate span or dependent input).
inline OrthonormalSet indefinite_gram_schmidt(const DiagonalMetric& g,
                                              std::vector<Vec> vectors,
                                              double tol = 1e-10) {
  OrthonormalSet out;
  while (!vectors.empty()) {
    std::size_t best = 0;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const double q = std::abs(g.inner(vectors[i], vectors[i]));
      if (q > best_norm) { best_norm = q; best = i; }
    }
    if (best_norm <= tol)
      throw DegenerateSubspace("indefinite_gram_schmidt: remaining span is numerically null");
    Vec v = std::move(vectors[best]);
    vectors.erase(vectors.begin() + static_cast<std::ptrdiff_t>(best));
    const double q = g.inner(v, v);
    const double s = q > 0 ? 1.0 : -1.0;
    v /= std::sqrt(std::abs(q));
    for (Vec& w : vectors) w -= s * g.inner(w, v) * v;
    out.vectors.push_back(std::move(v));
    out.signs.push_back(s);
  }
  return out;
}

/// Full complex spectrum with multiplicity, sorted lexicographically by
/// (real, imaginary). Throws ConvergenceFailure if the QR iteration stalls.
inline std::vector<Complex> eigen_spectrum(const CEndo& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("eigen_spectrum: matrix not square");
  Eigen::ComplexEigenSolver<CEndo> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigen_spectrum: QR iteration did not converge");
  std::vector<Complex> ev(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + A.rows());
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return ev;
}

inline std::vector<Complex> eigen_spectrum(const Endo& A) {
  return eigen_spectrum(CEndo(A.cast<Complex>()));
}

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Signature counts of a symmetric matrix; eigenvalues within tol of zero
/// count as zero. Throws NotSymmetric if M deviates from M^T beyond tol.
inline Inertia sym_index(const Endo& M, double tol = 1e-9) {
  if (M.rows() != M.cols()) throw DimensionMismatch("sym_index: matrix not square");
  if (max_abs(Endo(M - M.transpose())) > tol)
    throw NotSymmetric("sym_index: matrix is not symmetric within tol");
  Eigen::SelfAdjointEigenSolver<Endo> solver(M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("sym_index: eigenvalue iteration did not converge");
  Inertia r;
  for (int k = 0; k < M.rows(); ++k) {
    const double ev = solver.eigenvalues()[k];
    if (ev > tol) r.positive++;
    else if (ev < -tol) r.negative++;
    else r.zero++;
  }
  return r;
}

/// Scaling-and-squaring matrix exponential (series at scaled argument).
inline Endo matrix_exp(const Endo& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("matrix_exp: matrix not square");
  const int m = static_cast<int>(A.rows());
  const double norm = A.size() ? A.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Endo B = A / std::pow(2.0, squarings);
  Endo term = Endo::Identity(m, m);
  Endo sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * B) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Deterministic Gaussian stream: mt19937_64 + 53-bit uniforms + Box-Muller
/// (trigonometric form, cached second draw). The protocol is fixed so that a
/// seed fully determines the stream.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gauss() {
    if (has_spare_) { has_spare_ = false; return spare_; }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    has_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  Vec gauss_vector(int n) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = gauss();
    return v;
  }

  Endo gauss_matrix(int rows, int cols) {
    Endo M(rows, cols);
    for (int i = 0; i < rows; ++i)      // row-major fill: part of the protocol
      for (int j = 0; j < cols; ++j) M(i, j) = gauss();
    return M;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace twistor
