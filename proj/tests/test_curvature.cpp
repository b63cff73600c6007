#include <catch2/catch_amalgamated.hpp>

#include <twistor/curvature.hpp>

using namespace twistor;

namespace {

double pair_max(const CurvatureOperator& R) {
  double r = 0.0;
  for (int a = 0; a < R.dim(); ++a)
    for (int b = a + 1; b < R.dim(); ++b) r = std::max(r, max_abs(R.at(a, b)));
  return r;
}

CurvatureOperator random_curv(const DiagonalMetric& g, GaussianRng& rng) {
  const int m = g.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) comp[a][b] = random_so_element(g, rng, 1.0);
  return CurvatureOperator(g, std::move(comp));
}

Endo ricci(const CurvatureOperator& R) {
  const int m = R.dim();
  const DiagonalMetric& g = R.metric();
  Endo ric(m, m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += g.sign(k) * g.sign(k) * R.pair(k, b)(k, c);
      ric(b, c) = acc;
    }
  return ric;
}

CurvatureOperator kn_curvature(const DiagonalMetric& g, const Endo& h, const Endo& k) {
  const int m = g.dim();
  std::vector<std::vector<Endo>> comp(m, std::vector<Endo>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Endo E(m, m);
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
          E(d, c) = g.sign(d) * detail::kulkarni_nomizu(h, k, a, b, c, d);
      comp[a][b] = std::move(E);
    }
  return CurvatureOperator(g, std::move(comp));
}

}  // namespace

TEST_CASE("constant curvature evaluates to the wedge") {
  const DiagonalMetric g = DiagonalMetric::standard(2, 2);
  const CurvatureOperator R = constant_curvature(g);
  GaussianRng rng(2);
  const Vec X = rng.gauss_vector(4), Y = rng.gauss_vector(4), Z = rng.gauss_vector(4);
  const Vec expected = g.inner(Y, Z) * X - g.inner(X, Z) * Y;
  REQUIRE((R.evaluate(X, Y) * Z - expected).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(bianchi_residual(R) == 0.0);
}

TEST_CASE("constant curvature is invariant under the J-action") {
  for (const auto& [p, q] : {std::pair{2, 0}, std::pair{1, 1}}) {
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    GaussianRng rng(7);
    const Endo J = random_ocs(p, q, rng);
    REQUIRE(pair_max(j0_action(J, constant_curvature(g))) < 1e-12);
  }
}

TEST_CASE("action spectrum lies in {0, +-2i, +-4i}") {
  for (const auto& [p, q] : {std::pair{2, 0}, std::pair{1, 1}}) {
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    GaussianRng rng(13);
    const Endo J = random_ocs(p, q, rng);
    const auto ev = action_spectrum(g, J, 1e-7);
    REQUIRE(static_cast<int>(ev.size()) == 36);
    int m4 = 0, nonzero = 0;
    for (const Complex& l : ev) {
      if (std::abs(l) > 1.0) ++nonzero;
      if (std::min(std::abs(l - Complex(0, 4)), std::abs(l + Complex(0, 4))) < 1e-7) ++m4;
    }
    REQUIRE(m4 == 2);      // dim 4: one (0,2)x(0,2) line per sign
    REQUIRE(nonzero > 0);  // the action is not trivial
  }
}

TEST_CASE("four_i_component is the +-4i eigenprojection") {
  const DiagonalMetric g = DiagonalMetric::standard(2, 2);
  GaussianRng rng(19);
  const Endo J = random_ocs(1, 1, rng);

  REQUIRE(pair_max(four_i_component(J, constant_curvature(g))) < 1e-12);

  const CurvatureOperator R = random_curv(g, rng);
  const CurvatureOperator S = four_i_component(J, R);
  // idempotence
  const CurvatureOperator SS = four_i_component(J, S);
  double idem = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) idem = std::max(idem, max_abs(Endo(SS.at(a, b) - S.at(a, b))));
  REQUIRE(idem < 1e-12);
  // (J.)^2 = -16 on the +-4i part
  const CurvatureOperator JJS = j0_action(J, j0_action(J, S));
  double res = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      res = std::max(res, max_abs(Endo(JJS.at(a, b) + 16.0 * S.at(a, b))));
  REQUIRE(res < 1e-11);
  REQUIRE(pair_max(S) > 1e-3);  // generic input has a nonzero component
}

TEST_CASE("integrability residual separates constant from generic curvature") {
  const DiagonalMetric g = DiagonalMetric::standard(4, 2);
  GaussianRng rng(29);
  const Endo J = random_ocs(2, 1, rng);
  const auto [rT, rR] = integrability_residual(J, constant_curvature(g), TorsionOperator::zero(g));
  REQUIRE(rT == 0.0);
  REQUIRE(rR < 1e-12);
  const auto [gT, gR] = integrability_residual(J, random_curv(g, rng), TorsionOperator::zero(g));
  REQUIRE(gT == 0.0);
  REQUIRE(gR > 1e-4);
}

TEST_CASE("torsion operator evaluates bilinearly") {
  const DiagonalMetric g = DiagonalMetric::standard(2, 0);
  TorsionOperator T = TorsionOperator::zero(g);
  T.at(0, 1) = (Vec(2) << 3, -1).finished();
  const CVec X = CVec::Unit(2, 0), Y = CVec::Unit(2, 1);
  REQUIRE((T.evaluate(X, Y) - T.at(0, 1).cast<Complex>()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((T.evaluate(Y, X) + T.at(0, 1).cast<Complex>()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Weyl tensor: kernel, trace-freeness, idempotence") {
  for (const auto& [p2, q2] : {std::pair{4, 0}, std::pair{2, 2}, std::pair{4, 2}}) {
    const DiagonalMetric g = DiagonalMetric::standard(p2, q2);
    const int m = g.dim();
    REQUIRE(pair_max(weyl_tensor(constant_curvature(g))) < 1e-11);

    GaussianRng rng(37);
    const Endo S = rng.gauss_matrix(m, m);
    const Endo h = 0.5 * (S + S.transpose());
    // Ricci-type inputs are annihilated
    REQUIRE(pair_max(weyl_tensor(kn_curvature(g, h, g.gram()))) < 1e-10);

    const Endo S2 = rng.gauss_matrix(m, m);
    const Endo k = 0.5 * (S2 + S2.transpose());
    const CurvatureOperator R = kn_curvature(g, h, k);
    REQUIRE(bianchi_residual(R) < 1e-12);
    const CurvatureOperator W = weyl_tensor(R);
    REQUIRE(max_abs(ricci(W)) < 1e-10);
    const CurvatureOperator WW = weyl_tensor(W);
    double idem = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        idem = std::max(idem, max_abs(Endo(WW.at(a, b) - W.at(a, b))));
    REQUIRE(idem < 1e-10);
  }
  REQUIRE_THROWS_AS(weyl_tensor(constant_curvature(DiagonalMetric::standard(2, 0))),
                    DimensionTooSmall);
  // generic so-valued pairings violate the first Bianchi identity
  const DiagonalMetric g4 = DiagonalMetric::standard(4, 0);
  GaussianRng rng(41);
  REQUIRE_THROWS_AS(weyl_tensor(random_curv(g4, rng)), Error);
}

TEST_CASE("conformal difference tensor") {
  const DiagonalMetric g = DiagonalMetric::standard(4, 2);
  GaussianRng rng(43);
  const Vec df = rng.gauss_vector(6);
  const auto A = conformal_difference_tensor(g, df, g.raise(df));
  const Vec X = rng.gauss_vector(6), Y = rng.gauss_vector(6);
  Endo AX = Endo::Zero(6, 6);
  for (int a = 0; a < 6; ++a) AX += X[a] * A[a];
  const Vec expected = df.dot(X) * Y + df.dot(Y) * X - g.inner(X, Y) * g.raise(df);
  REQUIRE((AX * Y - expected).cwiseAbs().maxCoeff() < 1e-12);

  REQUIRE_THROWS_AS(conformal_difference_tensor(g, df, Vec(2 * df)), InconsistentGradient);

  const Endo j = random_ocs(2, 1, rng);
  REQUIRE(acs_invariance_residual(j, A) < 1e-13);
}
