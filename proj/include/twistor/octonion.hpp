#pragma once

#include "sphere.hpp"

namespace twistor {

/// Base field flavour of the (split-)quaternion / octonion tower: the
/// definite flavour reproduces the classical round-S6 structure, the split
/// flavour the indefinite one on S6 with negative index 4.
enum class OctFlavor { definite, split };

inline double oct_epsilon(OctFlavor f) { return f == OctFlavor::definite ? 1.0 : -1.0; }

using V3 = Eigen::Vector3d;
using Quat = Eigen::Vector4d;                 // (real, imaginary triple)
using Oct = Eigen::Matrix<double, 8, 1>;      // pair of quaternions (a, alpha)

inline DiagonalMetric lorentz3_metric(OctFlavor f) {
  const double e = oct_epsilon(f);
  return DiagonalMetric((Vec(3) << 1.0, e, e).finished());
}

inline DiagonalMetric quat_metric(OctFlavor f) {
  const double e = oct_epsilon(f);
  return DiagonalMetric((Vec(4) << 1.0, 1.0, e, e).finished());
}

inline DiagonalMetric oct_metric(OctFlavor f) {
  const double e = oct_epsilon(f);
  return DiagonalMetric((Vec(8) << 1.0, 1.0, e, e, 1.0, 1.0, e, e).finished());
}

/// Imaginary octonions Im H + H l, i.e. R^8 minus the leading real axis.
inline DiagonalMetric imag_oct_metric(OctFlavor f) {
  return DiagonalMetric(Vec(oct_metric(f).signs().tail(7)));
}

/// Cross product on the 3-space diag(1,e,e), defined by
/// g(u x v, w) = Vol(u,v,w): the Euclidean cross with raised index.
inline V3 lorentz_cross(OctFlavor f, const V3& u, const V3& v) {
  const double e = oct_epsilon(f);
  V3 c = u.cross(v);
  c[1] *= e;
  c[2] *= e;
  return c;
}

inline Quat quat(double r, const V3& im) { return (Quat() << r, im).finished(); }
inline V3 quat_im(const Quat& a) { return a.tail<3>(); }
inline Quat quat_conj(const Quat& a) { return quat(a[0], -quat_im(a)); }

/// (a0, a')(b0, b') = (a0 b0 - g(a',b'), a0 b' + b0 a' + a' x b').
inline Quat quat_mul(OctFlavor f, const Quat& a, const Quat& b) {
  const DiagonalMetric g3 = lorentz3_metric(f);
  const double r = a[0] * b[0] - g3.inner(quat_im(a), quat_im(b));
  const V3 im = a[0] * quat_im(b) + b[0] * quat_im(a) + lorentz_cross(f, quat_im(a), quat_im(b));
  return quat(r, im);
}

/// Multiplicative norm N(a) = a abar = a0^2 + g(a',a'): signature ++ee.
inline double quat_norm2(OctFlavor f, const Quat& a) {
  return quat_mul(f, a, quat_conj(a))[0];
}

/// Quaternionic cross a x b = Im(bbar a); reduces to lorentz_cross on
/// imaginary arguments.
inline V3 quat_cross(OctFlavor f, const Quat& a, const Quat& b) {
  return quat_im(quat_mul(f, quat_conj(b), a));
}

inline Quat oct_first(const Oct& u) { return u.head<4>(); }
inline Quat oct_second(const Oct& u) { return u.tail<4>(); }
inline Oct oct(const Quat& a, const Quat& b) { return (Oct() << a, b).finished(); }

/// Doubled cross product of u = (a, alpha), v = (b, beta): the imaginary
/// part of the Cayley-Dickson product vbar u,
///   u x v = (a x b - alpha x beta,  alpha bbar - beta abar).
inline Oct octonion_cross(OctFlavor f, const Oct& u, const Oct& v) {
  const Quat a = oct_first(u), al = oct_second(u);
  const Quat b = oct_first(v), be = oct_second(v);
  const Quat first = quat(0.0, quat_cross(f, a, b) - quat_cross(f, al, be));
  const Quat second = quat_mul(f, al, quat_conj(b)) - quat_mul(f, be, quat_conj(a));
  return oct(first, second);
}

/// The same pair with the second component read literally as
/// (alpha betabar - beta alphabar); kept for the convention adjudication
/// reports, where its failure of the J-invariants is recorded.
inline Oct octonion_cross_printed(OctFlavor f, const Oct& u, const Oct& v) {
  const Quat a = oct_first(u), al = oct_second(u);
  const Quat b = oct_first(v), be = oct_second(v);
  const Quat first = quat(0.0, quat_cross(f, a, b) - quat_cross(f, al, be));
  const Quat second = quat_mul(f, al, quat_conj(be)) - quat_mul(f, be, quat_conj(al));
  return oct(first, second);
}

inline Oct embed_imag(const Vec& x7) {
  if (x7.size() != 7) throw DimensionMismatch("embed_imag: expected a 7-vector");
  Oct u = Oct::Zero();
  u.tail<7>() = x7;
  return u;
}

inline Vec drop_imag(const Oct& u) { return u.tail<7>(); }

/// Almost complex structure J_x(u) = x cross u on the tangent space of the
/// unit sphere of the imaginary octonions, as a 7x7 matrix sandwiched
/// between tangent projections.
inline Endo j6_matrix(OctFlavor f, const Vec& x, double tol = 1e-6) {
  const DiagonalMetric g7 = imag_oct_metric(f);
  if (std::abs(g7.inner(x, x) - 1.0) > tol)
    throw NotOnSphere("j6_matrix: base point is not on the unit sphere");
  const Oct X = embed_imag(x);
  Endo M(7, 7);
  for (int k = 0; k < 7; ++k)
    M.col(k) = drop_imag(octonion_cross(f, X, embed_imag(Vec::Unit(7, k))));
  const Endo P = Endo::Identity(7, 7) - x * (x.cwiseProduct(g7.signs())).transpose();
  return P * M * P;
}

inline PseudoSphere oct_sphere(OctFlavor f) { return PseudoSphere(imag_oct_metric(f)); }

inline JSection j6_section(OctFlavor f) {
  return JSection{[f](const Vec& y) { return j6_matrix(f, y); }};
}

/// |(D_u J) u| for the cross-product structure, by FD covariant calculus.
inline double nearly_kahler_residual(OctFlavor f, const Vec& x, const Vec& u, double h,
                                     double tol = 1e-6) {
  const PseudoSphere s = oct_sphere(f);
  if (!s.on_sphere(x, tol)) throw NotOnSphere("nearly_kahler_residual: x off the sphere");
  if (std::abs(s.ambient.inner(x, u)) > tol)
    throw NotTangent("nearly_kahler_residual: u is not tangent at x");
  const FdGeometry geo = FdGeometry::sphere(s);
  const JSection jsec = j6_section(f);
  const Vec r = nabla_J_apply(geo, jsec, x, u, projected_constant(geo, u), h);
  return r.cwiseAbs().maxCoeff();
}

}  // namespace twistor
