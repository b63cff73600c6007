#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bundle.hpp"

namespace twistor {

using VectorField = std::function<Vec(const Vec&)>;

/// Unit pseudo-sphere { <x,x> = 1 } in an odd-dimensional indefinite space
/// R^{2p+1,2q}; tangent spaces are even-dimensional of signature (2p,2q).
struct PseudoSphere {
  DiagonalMetric ambient;

  explicit PseudoSphere(DiagonalMetric g) : ambient(std::move(g)) {
    if (ambient.dim() % 2 == 0)
      throw DimensionMismatch("PseudoSphere: ambient dimension must be odd");
    if (ambient.signature().minus % 2 != 0)
      throw DimensionMismatch("PseudoSphere: negative index must be even");
  }

  int n() const { return (ambient.dim() - 1) / 2; }
  int p() const { return (ambient.signature().plus - 1) / 2; }
  int q() const { return ambient.signature().minus / 2; }

  bool on_sphere(const Vec& x, double tol = 1e-9) const {
    return std::abs(ambient.inner(x, x) - 1.0) <= tol;
  }

  Vec tangent_project(const Vec& x, const Vec& v) const {
    return v - ambient.inner(v, x) * x;
  }

  /// Normalised straight line through x: great-circle-type curve with
  /// c(0) = x, c'(0) = v for tangent v.
  Vec curve(const Vec& x, const Vec& v, double t) const {
    const Vec y = x + t * v;
    const double qq = ambient.inner(y, y);
    if (qq <= 0.25)
      throw CurveLeavesChart("PseudoSphere::curve: normalisation became degenerate");
    return y / std::sqrt(qq);
  }
};

/// Substrate for finite-difference covariant calculus: either the unit
/// pseudo-sphere (projective curves, tangent projection) or its flat
/// analogue (straight lines, identity projection), so that structural
/// residuals can be compared against a space where they vanish exactly.
class FdGeometry {
 public:
  static FdGeometry sphere(const PseudoSphere& s) { return FdGeometry(s.ambient, false); }
  static FdGeometry flat(const DiagonalMetric& g) { return FdGeometry(g, true); }

  const DiagonalMetric& metric() const { return g_; }
  bool is_flat() const { return flat_; }
  int tangent_dim() const { return flat_ ? g_.dim() : g_.dim() - 1; }

  Vec curve(const Vec& x, const Vec& v, double t) const {
    if (flat_) return x + t * v;
    return PseudoSphere(g_).curve(x, v, t);
  }

  Vec project(const Vec& x, const Vec& v) const {
    if (flat_) return v;
    return PseudoSphere(g_).tangent_project(x, v);
  }

 private:
  FdGeometry(DiagonalMetric g, bool flat) : g_(std::move(g)), flat_(flat) {}
  DiagonalMetric g_;
  bool flat_;
};

/// Extension of a fixed vector to a field tangent everywhere.
inline VectorField projected_constant(const FdGeometry& geo, const Vec& v) {
  return [geo, v](const Vec& y) { return geo.project(y, v); };
}

/// Levi-Civita covariant derivative by central differences along the
/// substrate curve, projected back to the tangent space at x.  O(h^2).
inline Vec cov_deriv(const FdGeometry& geo, const VectorField& field, const Vec& x, const Vec& v,
                     double h) {
  const Vec fwd = field(geo.curve(x, v, h));
  const Vec bwd = field(geo.curve(x, v, -h));
  return geo.project(x, Vec((fwd - bwd) / (2.0 * h)));
}

/// FD Lie bracket of two fields at x (via torsion-freeness).
inline Vec fd_bracket(const FdGeometry& geo, const VectorField& F, const VectorField& G,
                      const Vec& x, double h) {
  return cov_deriv(geo, G, x, F(x), h) - cov_deriv(geo, F, x, G(x), h);
}

/// Curvature by nested central differences,
///   R(X,Y)Z = D_X D_Y Z~ - D_Y D_X Z~ - D_[X~,Y~] Z~,
/// with projected-constant extensions.  Error O(h^2).
inline Vec fd_curvature(const FdGeometry& geo, const Vec& x, const Vec& X, const Vec& Y,
                        const Vec& Z, double h) {
  const Vec Xt = geo.project(x, X);
  const Vec Yt = geo.project(x, Y);
  const VectorField Xf = projected_constant(geo, Xt);
  const VectorField Yf = projected_constant(geo, Yt);
  const VectorField Zf = projected_constant(geo, geo.project(x, Z));
  const auto nabla = [&](const VectorField& dir, const VectorField& field) {
    return VectorField([&geo, dir, field, h](const Vec& y) {
      return cov_deriv(geo, field, y, dir(y), h);
    });
  };
  const Vec first = cov_deriv(geo, nabla(Yf, Zf), x, Xt, h);
  const Vec second = cov_deriv(geo, nabla(Xf, Zf), x, Yt, h);
  const Vec bracket = fd_bracket(geo, Xf, Yf, x, h);
  const Vec third = cov_deriv(geo, Zf, x, bracket, h);
  return first - second - third;
}

/// The isometry fixing the orthogonal complement of span{u,v} and taking the
/// unit vector u to the unit vector v:
///   rho(w) = w - (<u+v,w>/(1+<u,v>)) (u+v) + 2<u,w> v.
inline Endo rotation_taking(const DiagonalMetric& g, const Vec& u, const Vec& v,
                            double tol = 1e-9) {
  if (std::abs(g.inner(u, u) - 1.0) > tol || std::abs(g.inner(v, v) - 1.0) > tol)
    throw NotOnSphere("rotation_taking: endpoints must be unit vectors");
  const double denom = 1.0 + g.inner(u, v);
  if (std::abs(denom) < tol)
    throw AntipodalOrDegenerate("rotation_taking: 1 + <u,v> is numerically zero");
  const int m = g.dim();
  const Vec s = u + v;
  Endo rho = Endo::Identity(m, m);
  rho -= (s * (s.cwiseProduct(g.signs())).transpose()) / denom;
  rho += 2.0 * v * (u.cwiseProduct(g.signs())).transpose();
  return rho;
}

/// A smooth local assignment x -> j_x of tangent-space complex structures.
struct JSection {
  std::function<Endo(const Vec&)> rule;
  Endo operator()(const Vec& y) const { return rule(y); }
};

/// Local section of the twistor bundle anchored at x0: transport the fibre
/// value K (a twistor point over x0 in plus-one form) along the rotation
/// taking x0 to x.  Defined on the chart 1 + <x0,x> > margin.
inline JSection local_section(const PseudoSphere& s, const Endo& K, const Vec& x0,
                              double margin = 0.1, double tol = 1e-9) {
  const DiagonalMetric big = plus_one_metric(s.ambient);
  const TwistorPoint anchor = make_twistor_point(big, K, tol);
  if ((drop_vector(anchor.base()) - x0).cwiseAbs().maxCoeff() > tol)
    throw IncompatibleJ("local_section: K is not anchored over x0");
  const DiagonalMetric ambient = s.ambient;
  const int m = ambient.dim();
  auto rule = [ambient, K, x0, margin, m](const Vec& x) {
    if (1.0 + ambient.inner(x0, x) <= margin)
      throw CurveLeavesChart("local_section: point left the section chart");
    const Endo rho = rotation_taking(ambient, x0, x);
    Endo rho_hat = Endo::Identity(m + 1, m + 1);
    rho_hat.bottomRightCorner(m, m) = rho;
    Endo rho_hat_inv = Endo::Identity(m + 1, m + 1);
    rho_hat_inv.bottomRightCorner(m, m) =
        ambient.gram() * rho.transpose() * ambient.gram();
    const Endo Kx = rho_hat * K * rho_hat_inv;
    const Endo P =
        Endo::Identity(m, m) - x * (x.cwiseProduct(ambient.signs())).transpose();
    return Endo(P * Kx.bottomRightCorner(m, m) * P);
  };
  return JSection{std::move(rule)};
}

/// (D_Z J)(U~) = D_Z (J U~) - j_x (D_Z U~) for a field U~, direction Z.
inline Vec nabla_J_apply(const FdGeometry& geo, const JSection& jsec, const Vec& x, const Vec& Z,
                         const VectorField& field, double h) {
  const VectorField jfield = [&geo, &jsec, field](const Vec& y) {
    return Vec(jsec(y) * field(y));
  };
  return cov_deriv(geo, jfield, x, Z, h) - jsec(x) * cov_deriv(geo, field, x, Z, h);
}

/// Greedy pivoted orthonormal tangent basis at x from projected ambient
/// directions.
inline OrthonormalSet tangent_basis(const FdGeometry& geo, const Vec& x, double tol = 1e-8) {
  const DiagonalMetric& g = geo.metric();
  std::vector<Vec> cands;
  for (int k = 0; k < g.dim(); ++k) cands.push_back(geo.project(x, Vec::Unit(g.dim(), k)));
  OrthonormalSet out;
  while (true) {
    double best_norm = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const double nn = std::abs(g.inner(cands[i], cands[i]));
      if (nn > best_norm) { best_norm = nn; best = i; }
    }
    if (cands.empty() || best_norm <= tol) break;
    const double norm2 = g.inner(cands[best], cands[best]);
    const double sgn = norm2 > 0 ? 1.0 : -1.0;
    const Vec b = cands[best] / std::sqrt(std::abs(norm2));
    out.vectors.push_back(b);
    out.signs.push_back(sgn);
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(best));
    for (Vec& w : cands) w -= sgn * g.inner(w, b) * b;
  }
  if (static_cast<int>(out.vectors.size()) != geo.tangent_dim())
    throw DegenerateSubspace("tangent_basis: projected directions do not span");
  return out;
}

/// Matrix of (D_Z J) on the tangent space at x, extended by zero off it.
inline Endo nabla_J_matrix(const FdGeometry& geo, const JSection& jsec, const Vec& x, const Vec& Z,
                           double h) {
  const DiagonalMetric& g = geo.metric();
  const OrthonormalSet basis = tangent_basis(geo, x);
  Endo M = Endo::Zero(g.dim(), g.dim());
  for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
    const Vec col = nabla_J_apply(geo, jsec, x, Z, projected_constant(geo, basis.vectors[i]), h);
    M += basis.signs[i] * col * (basis.vectors[i].cwiseProduct(g.signs())).transpose();
  }
  return M;
}

inline double fd_scalar_deriv(const FdGeometry& geo, const std::function<double(const Vec&)>& f,
                              const Vec& x, const Vec& v, double h) {
  return (f(geo.curve(x, v, h)) - f(geo.curve(x, v, -h))) / (2.0 * h);
}

/// Nijenhuis tensor of the section at x, via FD brackets:
///   N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y].
inline Vec nijenhuis(const FdGeometry& geo, const JSection& jsec, const Vec& x, const Vec& X,
                     const Vec& Y, double h) {
  const Endo jx = jsec(x);
  const auto jfield = [&geo, &jsec](const Vec& v) {
    return VectorField([&geo, &jsec, v](const Vec& y) {
      return Vec(jsec(y) * geo.project(y, v));
    });
  };
  const VectorField Xf = projected_constant(geo, geo.project(x, X));
  const VectorField Yf = projected_constant(geo, geo.project(x, Y));
  const VectorField JXf = jfield(geo.project(x, X));
  const VectorField JYf = jfield(geo.project(x, Y));
  return fd_bracket(geo, JXf, JYf, x, h) - jx * fd_bracket(geo, JXf, Yf, x, h) -
         jx * fd_bracket(geo, Xf, JYf, x, h) - fd_bracket(geo, Xf, Yf, x, h);
}

/// d omega by the invariant exterior-derivative formula, with
/// omega(U,V) = g(j U, V) and projected-constant extensions.
inline double d_omega_fd(const FdGeometry& geo, const JSection& jsec, const Vec& x, const Vec& X,
                         const Vec& Y, const Vec& Z, double h) {
  const DiagonalMetric& g = geo.metric();
  const VectorField Xf = projected_constant(geo, geo.project(x, X));
  const VectorField Yf = projected_constant(geo, geo.project(x, Y));
  const VectorField Zf = projected_constant(geo, geo.project(x, Z));
  const auto omega = [&](const VectorField& U, const VectorField& V) {
    return std::function<double(const Vec&)>([&geo, &jsec, &g, U, V](const Vec& y) {
      return g.inner(Vec(jsec(y) * U(y)), V(y));
    });
  };
  const double derivs = fd_scalar_deriv(geo, omega(Yf, Zf), x, Xf(x), h) -
                        fd_scalar_deriv(geo, omega(Xf, Zf), x, Yf(x), h) +
                        fd_scalar_deriv(geo, omega(Xf, Yf), x, Zf(x), h);
  const auto w_at = [&](const Vec& u, const Vec& v) { return g.inner(Vec(jsec(x) * u), v); };
  const double brackets = -w_at(fd_bracket(geo, Xf, Yf, x, h), Zf(x)) +
                          w_at(fd_bracket(geo, Xf, Zf, x, h), Yf(x)) -
                          w_at(fd_bracket(geo, Yf, Zf, x, h), Xf(x));
  return derivs + brackets;
}

/// d omega as the cyclic sum of g((D_Z J)X, Y).
inline double d_omega_nabla(const FdGeometry& geo, const JSection& jsec, const Vec& x,
                            const Vec& X, const Vec& Y, const Vec& Z, double h) {
  const DiagonalMetric& g = geo.metric();
  const Vec Xt = geo.project(x, X), Yt = geo.project(x, Y), Zt = geo.project(x, Z);
  const auto nj = [&](const Vec& dir, const Vec& u) {
    return nabla_J_apply(geo, jsec, x, dir, projected_constant(geo, u), h);
  };
  return g.inner(nj(Zt, Xt), Yt) + g.inner(nj(Xt, Yt), Zt) + g.inner(nj(Yt, Zt), Xt);
}

/// Candidate trace form c * sum_cyc tr((X ^ Y) o D_Z J); the constant making
/// it equal d omega is determined empirically by the verification suites.
inline double d_omega_trace(const FdGeometry& geo, const JSection& jsec, const Vec& x,
                            const Vec& X, const Vec& Y, const Vec& Z, double h, double c) {
  const DiagonalMetric& g = geo.metric();
  const Vec Xt = geo.project(x, X), Yt = geo.project(x, Y), Zt = geo.project(x, Z);
  const auto term = [&](const Vec& a, const Vec& b, const Vec& dir) {
    return (wedge(g, a, b) * nabla_J_matrix(geo, jsec, x, dir, h)).trace();
  };
  return c * (term(Xt, Yt, Zt) + term(Yt, Zt, Xt) + term(Zt, Xt, Yt));
}

/// Cyclic trace sum alone (the c = 1 value), for fitting the constant.
inline double d_omega_trace_raw(const FdGeometry& geo, const JSection& jsec, const Vec& x,
                                const Vec& X, const Vec& Y, const Vec& Z, double h) {
  return d_omega_trace(geo, jsec, x, X, Y, Z, h, 1.0);
}

/// J-adapted orthonormal tangent frame {X_k, J X_k} with
/// <X_k,X_k> = <J X_k, J X_k> = eps_k.
struct AdaptedFrame {
  std::vector<Vec> x;    // X_1..X_n
  std::vector<Vec> jx;   // J X_1..J X_n
  std::vector<double> eps;
  int pairs() const { return static_cast<int>(x.size()); }
};

inline AdaptedFrame adapted_frame(const FdGeometry& geo, const JSection& jsec, const Vec& x,
                                  double tol = 1e-8) {
  const DiagonalMetric& g = geo.metric();
  if (geo.tangent_dim() % 2 != 0)
    throw DimensionMismatch("adapted_frame: tangent space must be even-dimensional");
  const Endo jx_mat = jsec(x);
  std::vector<Vec> cands;
  for (int k = 0; k < g.dim(); ++k) cands.push_back(geo.project(x, Vec::Unit(g.dim(), k)));
  AdaptedFrame frame;
  std::vector<std::pair<Vec, double>> picked;  // (vector, sign) spanning so far
  const auto reduce = [&](Vec w) {
    for (const auto& [b, sgn] : picked) w -= sgn * g.inner(w, b) * b;
    return w;
  };
  while (frame.pairs() < geo.tangent_dim() / 2) {
    double best_norm = -1.0;
    std::size_t best = 0;
    std::vector<Vec> reduced(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      reduced[i] = reduce(cands[i]);
      const double nn = std::abs(g.inner(reduced[i], reduced[i]));
      if (nn > best_norm) { best_norm = nn; best = i; }
    }
    if (cands.empty() || best_norm <= tol)
      throw DegenerateSubspace("adapted_frame: cannot complete a J-adapted frame");
    const double norm2 = g.inner(reduced[best], reduced[best]);
    const double sgn = norm2 > 0 ? 1.0 : -1.0;
    const Vec b = reduced[best] / std::sqrt(std::abs(norm2));
    const Vec jb = jx_mat * b;  // unit of the same sign, orthogonal to b
    frame.x.push_back(b);
    frame.jx.push_back(jb);
    frame.eps.push_back(sgn);
    picked.emplace_back(b, sgn);
    picked.emplace_back(jb, sgn);
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return frame;
}

/// Coefficients of (D_xi J) e_k in the complex frame e_h = X_h - i J X_h,
/// ebar_h = X_h + i J X_h (so <e_h, ebar_l> = 2 eps_h delta_hl and
/// <e_h, e_l> = 0), for each real frame direction xi:
///   (D_xi J) e_k = sum_h  gamma(xi)(k,h) e_h + gamma_bar(xi)(k,h) ebar_h.
/// Directions are indexed 0..2n-1 as {X_1..X_n, J X_1..J X_n}.
struct FrameCoefficients {
  std::vector<Eigen::MatrixXcd> gamma;      // e-components: vanish for a metric ACS
  std::vector<Eigen::MatrixXcd> gamma_bar;  // ebar-components: carry d omega
};

inline FrameCoefficients frame_coefficients(const FdGeometry& geo, const JSection& jsec,
                                            const Vec& x, const AdaptedFrame& frame, double h) {
  const DiagonalMetric& g = geo.metric();
  const int n = frame.pairs();
  std::vector<Vec> dirs;
  for (int k = 0; k < n; ++k) dirs.push_back(frame.x[k]);
  for (int k = 0; k < n; ++k) dirs.push_back(frame.jx[k]);
  const Complex I(0.0, 1.0);
  FrameCoefficients out;
  for (const Vec& xi : dirs) {
    Eigen::MatrixXcd gam = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd gam_bar = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      const Vec re = nabla_J_apply(geo, jsec, x, xi, projected_constant(geo, frame.x[k]), h);
      const Vec im = nabla_J_apply(geo, jsec, x, xi, projected_constant(geo, frame.jx[k]), h);
      const CVec V = re.cast<Complex>() - I * im.cast<Complex>();  // (D_xi J) e_k
      for (int l = 0; l < n; ++l) {
        const CVec e_l = frame.x[l].cast<Complex>() - I * frame.jx[l].cast<Complex>();
        const CVec ebar_l = frame.x[l].cast<Complex>() + I * frame.jx[l].cast<Complex>();
        gam(k, l) = g.inner(V, ebar_l) / (2.0 * frame.eps[l]);
        gam_bar(k, l) = g.inner(V, e_l) / (2.0 * frame.eps[l]);
      }
    }
    out.gamma.push_back(std::move(gam));
    out.gamma_bar.push_back(std::move(gam_bar));
  }
  return out;
}

/// max_{k,l} |(D_{e_k} J) e_l| with e_k = X_k - i J X_k: the obstruction to
/// the section being holomorphic in the frame directions.
inline double holomorphy_residual(const FdGeometry& geo, const JSection& jsec, const Vec& x,
                                  const AdaptedFrame& frame, double h) {
  const Complex I(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < frame.pairs(); ++k)
    for (int l = 0; l < frame.pairs(); ++l) {
      const auto nab = [&](const Vec& dir, const Vec& u) {
        return nabla_J_apply(geo, jsec, x, dir, projected_constant(geo, u), h);
      };
      const CVec V = (nab(frame.x[k], frame.x[l]) - nab(frame.jx[k], frame.jx[l])).cast<Complex>() -
                     I * (nab(frame.x[k], frame.jx[l]) + nab(frame.jx[k], frame.x[l])).cast<Complex>();
      worst = std::max(worst, V.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace twistor
