#include <catch2/catch_amalgamated.hpp>

#include <twistor/sphere.hpp>

using namespace twistor;

namespace {

Vec unit_tangent(const DiagonalMetric& g, const Vec& x, GaussianRng& rng) {
  Vec v = rng.gauss_vector(g.dim());
  v -= g.inner(v, x) * x;
  return Vec(v / v.norm());
}

Vec sphere_point(const DiagonalMetric& g, GaussianRng& rng) {
  for (;;) {
    const Vec x = rng.gauss_vector(g.dim());
    const double qq = g.inner(x, x);
    if (qq > 0.05) return Vec(x / std::sqrt(qq));
  }
}

}  // namespace

TEST_CASE("pseudo-sphere validation and curves") {
  REQUIRE_THROWS_AS(PseudoSphere(DiagonalMetric::standard(2, 2)), DimensionMismatch);
  REQUIRE_THROWS_AS(PseudoSphere(DiagonalMetric::standard(4, 1)), DimensionMismatch);

  const PseudoSphere s(DiagonalMetric::standard(3, 2));
  REQUIRE(s.n() == 2);
  REQUIRE(s.p() == 1);
  REQUIRE(s.q() == 1);

  GaussianRng rng(2);
  const Vec x = sphere_point(s.ambient, rng);
  REQUIRE(s.on_sphere(x));
  const Vec v = unit_tangent(s.ambient, x, rng);
  REQUIRE(s.on_sphere(s.curve(x, v, 0.37), 1e-12));
  REQUIRE((s.curve(x, v, 0.0) - x).cwiseAbs().maxCoeff() == 0.0);

  // crossing into the null cone is refused
  const Vec e0 = Vec::Unit(5, 0), e3 = Vec::Unit(5, 3);
  REQUIRE_THROWS_AS(s.curve(e0, e3, 1.0), CurveLeavesChart);
}

TEST_CASE("covariant derivative of a projected-constant field") {
  // exact oracle: D_v Y~ = -<Y0,x> v for Y~(y) = Y0 - <Y0,y>y
  for (const auto& sig : {std::pair{5, 0}, std::pair{3, 2}}) {
    const PseudoSphere s(DiagonalMetric::standard(sig.first, sig.second));
    const FdGeometry geo = FdGeometry::sphere(s);
    GaussianRng rng(3);
    const Vec x = sphere_point(s.ambient, rng);
    const Vec v = unit_tangent(s.ambient, x, rng);
    const Vec Y0 = rng.gauss_vector(s.ambient.dim());
    const double h = 1e-3;
    const Vec got = cov_deriv(geo, projected_constant(geo, Y0), x, v, h);
    const Vec expected = -s.ambient.inner(Y0, x) * v;
    REQUIRE((got - expected).cwiseAbs().maxCoeff() < 50 * h * h);
  }
}

TEST_CASE("flat substrate has exactly vanishing derivative structure") {
  const FdGeometry flat = FdGeometry::flat(DiagonalMetric::standard(2, 2));
  GaussianRng rng(5);
  const Vec x = rng.gauss_vector(4), v = rng.gauss_vector(4), w = rng.gauss_vector(4);
  REQUIRE(cov_deriv(flat, projected_constant(flat, w), x, v, 1e-3).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(fd_curvature(flat, x, v, w, rng.gauss_vector(4), 1e-3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("finite-difference curvature matches the constant-curvature form") {
  for (const auto& sig : {std::pair{3, 0}, std::pair{3, 2}}) {
    const PseudoSphere s(DiagonalMetric::standard(sig.first, sig.second));
    const FdGeometry geo = FdGeometry::sphere(s);
    const DiagonalMetric& g = s.ambient;
    GaussianRng rng(7);
    double worst_h = 0.0, worst_h2 = 0.0;
    const double h = 1e-3;
    for (int trial = 0; trial < 5; ++trial) {
      const Vec x = sphere_point(g, rng);
      const Vec X = unit_tangent(g, x, rng), Y = unit_tangent(g, x, rng),
                Z = unit_tangent(g, x, rng);
      const Vec exact = g.inner(Y, Z) * X - g.inner(X, Z) * Y;
      worst_h = std::max(worst_h,
                         (fd_curvature(geo, x, X, Y, Z, h) - exact).cwiseAbs().maxCoeff());
      worst_h2 = std::max(
          worst_h2, (fd_curvature(geo, x, X, Y, Z, h / 2) - exact).cwiseAbs().maxCoeff());
    }
    REQUIRE(worst_h < 5e-4);
    REQUIRE(worst_h / worst_h2 > 3.5);  // second-order convergence
  }
}

TEST_CASE("rotation_taking moves u to v and fixes the complement") {
  const DiagonalMetric g = DiagonalMetric::standard(3, 2);
  GaussianRng rng(11);
  const Vec u = sphere_point(g, rng);
  Vec v = sphere_point(g, rng);
  if (1.0 + g.inner(u, v) < 0.2) v = -v;
  const Endo rho = rotation_taking(g, u, v);
  REQUIRE((rho * u - v).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(max_abs(Endo(rho.transpose() * g.gram() * rho - g.gram())) < 1e-12);
  // identity on the orthogonal complement of span{u, v}
  Vec w = rng.gauss_vector(5);
  const Vec s = u + v;
  w -= g.inner(w, s) / g.inner(s, s) * s;
  const Vec d = u - v;
  w -= g.inner(w, d) / g.inner(d, d) * d;
  REQUIRE((rho * w - w).cwiseAbs().maxCoeff() < 1e-11);
  REQUIRE(max_abs(Endo(rotation_taking(g, u, u) - Endo::Identity(5, 5))) < 1e-12);
  REQUIRE_THROWS_AS(rotation_taking(g, u, Vec(-u)), AntipodalOrDegenerate);
  REQUIRE_THROWS_AS(rotation_taking(g, u, Vec(2 * v)), NotOnSphere);
}

TEST_CASE("local sections of the twistor bundle") {
  GaussianRng rng(13);
  const TwistorPoint tp = random_twistor_point(1, 1, rng);
  const PseudoSphere s(DiagonalMetric(Vec(tp.big.signs().tail(5))));
  const Vec x0 = drop_vector(tp.base());
  const JSection jsec = local_section(s, tp.J, x0);

  // at the anchor the section restricts the fibre value
  const auto [x, j] = restrict_cs(tp);
  REQUIRE(max_abs(Endo(jsec(x0) - j)) < 1e-11);

  // nearby values are isometric complex structures of their tangent spaces
  const Vec y = s.curve(x0, unit_tangent(s.ambient, x0, rng), 0.2);
  const Endo jy = jsec(y);
  const Endo P = Endo::Identity(5, 5) -
                 y * (y.cwiseProduct(s.ambient.signs())).transpose();
  REQUIRE(max_abs(Endo(jy * jy + P)) < 1e-11);
  REQUIRE(max_abs(Endo(jy.transpose() * s.ambient.gram() * jy - P.transpose() * s.ambient.gram() * P)) <
          1e-11);

  // wrong anchor and chart exit both refuse
  REQUIRE_THROWS_AS(local_section(s, tp.J, Vec(-x0)), IncompatibleJ);
  const PseudoSphere s2(DiagonalMetric::standard(3, 0));
  const TwistorPoint tp2 = random_twistor_point(1, 0, rng);
  const Vec z0 = drop_vector(tp2.base());
  const JSection sec2 = local_section(s2, tp2.J, z0);
  REQUIRE_THROWS_AS(sec2(Vec(-z0)), CurveLeavesChart);
}

TEST_CASE("tangent basis and nabla_J structure") {
  GaussianRng rng(17);
  const TwistorPoint tp = random_twistor_point(1, 1, rng);
  const PseudoSphere s(DiagonalMetric(Vec(tp.big.signs().tail(5))));
  const FdGeometry geo = FdGeometry::sphere(s);
  const Vec x0 = drop_vector(tp.base());
  const JSection jsec = local_section(s, tp.J, x0);

  const OrthonormalSet basis = tangent_basis(geo, x0);
  REQUIRE(static_cast<int>(basis.vectors.size()) == 4);
  int plus = 0;
  for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
    if (basis.signs[i] > 0) ++plus;
    for (std::size_t k = i + 1; k < basis.vectors.size(); ++k)
      REQUIRE(std::abs(s.ambient.inner(basis.vectors[i], basis.vectors[k])) < 1e-10);
  }
  REQUIRE(plus == 2);  // tangent signature (2,2)

  // probe away from the anchor: the section is parallel at x0 itself
  const double h = 1e-3;
  const Vec y = s.curve(x0, unit_tangent(s.ambient, x0, rng), 0.3);
  const OrthonormalSet ybasis = tangent_basis(geo, y);
  const Vec Z = unit_tangent(s.ambient, y, rng);
  const Endo NJ = nabla_J_matrix(geo, jsec, y, Z, h);
  const Endo jy = jsec(y);
  REQUIRE(max_abs(NJ) > 1e-3);  // generic point: the derivative is visible
  // (D_Z J) anti-commutes with J and is g-skew on the tangent space, up to FD error
  double anti = 0.0, skew = 0.0;
  for (std::size_t i = 0; i < ybasis.vectors.size(); ++i)
    for (std::size_t k = 0; k < ybasis.vectors.size(); ++k) {
      const Vec &bi = ybasis.vectors[i], &bk = ybasis.vectors[k];
      anti = std::max(anti, std::abs(s.ambient.inner(Vec((NJ * jy + jy * NJ) * bi), bk)));
      skew = std::max(skew, std::abs(s.ambient.inner(Vec(NJ * bi), bk) +
                                     s.ambient.inner(bi, Vec(NJ * bk))));
    }
  REQUIRE(anti < 5e-4);
  REQUIRE(skew < 5e-4);
}

TEST_CASE("any almost complex structure on S^2 is integrable") {
  GaussianRng rng(19);
  const TwistorPoint tp = random_twistor_point(1, 0, rng);
  const PseudoSphere s(DiagonalMetric::standard(3, 0));
  const FdGeometry geo = FdGeometry::sphere(s);
  const Vec x0 = drop_vector(tp.base());
  const JSection jsec = local_section(s, tp.J, x0);
  for (int trial = 0; trial < 3; ++trial) {
    const Vec X = unit_tangent(s.ambient, x0, rng), Y = unit_tangent(s.ambient, x0, rng);
    REQUIRE(nijenhuis(geo, jsec, x0, X, Y, 1e-3).cwiseAbs().maxCoeff() < 5e-4);
  }
}

TEST_CASE("three evaluations of d omega agree on the round sphere") {
  GaussianRng rng(23);
  const TwistorPoint tp = random_twistor_point(2, 0, rng);
  const PseudoSphere s(DiagonalMetric::standard(5, 0));
  const FdGeometry geo = FdGeometry::sphere(s);
  const Vec x0 = drop_vector(tp.base());
  const JSection jsec = local_section(s, tp.J, x0);
  const double h = 1e-3;
  for (int trial = 0; trial < 3; ++trial) {
    const Vec y = s.curve(x0, unit_tangent(s.ambient, x0, rng), 0.3);
    const Vec X = unit_tangent(s.ambient, y, rng), Y = unit_tangent(s.ambient, y, rng),
              Z = unit_tangent(s.ambient, y, rng);
    const double v_fd = d_omega_fd(geo, jsec, y, X, Y, Z, h);
    const double v_nabla = d_omega_nabla(geo, jsec, y, X, Y, Z, h);
    const double v_trace = d_omega_trace(geo, jsec, y, X, Y, Z, h, 0.5);
    REQUIRE(std::abs(v_fd - v_nabla) < 5e-4);
    REQUIRE(std::abs(v_fd - v_trace) < 5e-4);
  }
}

TEST_CASE("adapted frames and their coefficients") {
  GaussianRng rng(29);
  const TwistorPoint tp = random_twistor_point(1, 1, rng);
  const PseudoSphere s(DiagonalMetric(Vec(tp.big.signs().tail(5))));
  const FdGeometry geo = FdGeometry::sphere(s);
  const Vec x0 = drop_vector(tp.base());
  const JSection jsec = local_section(s, tp.J, x0);
  // evaluate away from the anchor, where the section has visible derivatives
  const Vec y = s.curve(x0, unit_tangent(s.ambient, x0, rng), 0.3);

  const AdaptedFrame frame = adapted_frame(geo, jsec, y);
  REQUIRE(frame.pairs() == 2);
  const Endo jx = jsec(y);
  for (int k = 0; k < frame.pairs(); ++k) {
    REQUIRE((jx * frame.x[k] - frame.jx[k]).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(s.ambient.inner(frame.x[k], frame.x[k]) == Catch::Approx(frame.eps[k]));
    REQUIRE(s.ambient.inner(frame.jx[k], frame.jx[k]) ==
            Catch::Approx(frame.eps[k]).margin(1e-10));
    REQUIRE(std::abs(s.ambient.inner(frame.x[k], frame.jx[k])) < 1e-10);
    // e_k = X_k - i J X_k is null, <e_k, ebar_k> = 2 eps_k
    const Complex I(0, 1);
    const CVec e = frame.x[k].cast<Complex>() - I * frame.jx[k].cast<Complex>();
    const CVec ebar = frame.x[k].cast<Complex>() + I * frame.jx[k].cast<Complex>();
    REQUIRE(std::abs(s.ambient.inner(e, e)) < 1e-10);
    REQUIRE(std::abs(s.ambient.inner(e, ebar) - 2.0 * frame.eps[k]) < 1e-10);
  }

  const double h = 1e-3;
  const FrameCoefficients coef = frame_coefficients(geo, jsec, y, frame, h);
  REQUIRE(coef.gamma.size() == 4);
  for (const auto& gam : coef.gamma) REQUIRE(gam.cwiseAbs().maxCoeff() < 5e-4);
  // some gamma_bar coefficient must be visibly nonzero for a generic section
  double gb = 0.0;
  for (const auto& m : coef.gamma_bar) gb = std::max(gb, m.cwiseAbs().maxCoeff());
  REQUIRE(gb > 1e-3);
}

TEST_CASE("constant structures on flat space are holomorphic") {
  const FdGeometry flat = FdGeometry::flat(DiagonalMetric::standard(2, 2));
  const JSection jsec{[](const Vec&) { return standard_J(1, 1); }};
  GaussianRng rng(31);
  const Vec x = rng.gauss_vector(4);
  const AdaptedFrame frame = adapted_frame(flat, jsec, x);
  REQUIRE(holomorphy_residual(flat, jsec, x, frame, 1e-3) == 0.0);
  const FrameCoefficients coef = frame_coefficients(flat, jsec, x, frame, 1e-3);
  for (const auto& m : coef.gamma) REQUIRE(m.cwiseAbs().maxCoeff() == 0.0);
  for (const auto& m : coef.gamma_bar) REQUIRE(m.cwiseAbs().maxCoeff() == 0.0);
}
