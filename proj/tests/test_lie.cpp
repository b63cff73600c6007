#include <catch2/catch_amalgamated.hpp>

#include <twistor/lie.hpp>

using namespace twistor;

TEST_CASE("wedge acts as (u^v)w = <v,w>u - <u,w>v and is g-skew") {
  const DiagonalMetric g = DiagonalMetric::standard(2, 2);
  GaussianRng rng(3);
  const Vec u = rng.gauss_vector(4), v = rng.gauss_vector(4), w = rng.gauss_vector(4);
  const Endo W = wedge(g, u, v);
  const Vec expected = g.inner(v, w) * u - g.inner(u, w) * v;
  REQUIRE((W * w - expected).cwiseAbs().maxCoeff() < 1e-13);
  REQUIRE(g_skew_residual(g, W) < 1e-13);
}

TEST_CASE("so basis and coordinates are inverse to each other") {
  const DiagonalMetric g = DiagonalMetric::standard(1, 2);
  const auto basis = so_basis(g);
  REQUIRE(basis.size() == 3);
  GaussianRng rng(5);
  const Vec c = rng.gauss_vector(3);
  Endo M = Endo::Zero(3, 3);
  for (int k = 0; k < 3; ++k) M += c[k] * basis[k];
  REQUIRE((so_coordinates(g, M) - c).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Killing form matches the closed form on so(k,l)") {
  // worked example on so(2,1): B(e0^e1, e0^e1) = 1 * tr((e0^e1)^2) = -2
  const DiagonalMetric g21 = DiagonalMetric::standard(2, 1);
  const Endo E = wedge(g21, Vec::Unit(3, 0), Vec::Unit(3, 1));
  REQUIRE(killing_closed_form(2, 1, E, E) == Catch::Approx(-2.0));
  REQUIRE(killing_via_ad(g21, E, E) == Catch::Approx(-2.0));

  for (const auto& [k, l] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    const DiagonalMetric g = DiagonalMetric::standard(k, l);
    GaussianRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const Endo A = random_so_element(g, rng, 1.0);
      const Endo B = random_so_element(g, rng, 1.0);
      REQUIRE(std::abs(killing_via_ad(g, A, B) - killing_closed_form(k, l, A, B)) < 1e-11);
    }
  }
  REQUIRE_THROWS_AS(killing_closed_form(1, 1, Endo::Zero(2, 2), Endo::Zero(2, 2)),
                    DimensionTooSmall);
}

TEST_CASE("standard complex structures") {
  Endo J1(2, 2);
  J1 << 0, -1, 1, 0;
  REQUIRE(max_abs(Endo(standard_J(1, 0) - J1)) == 0.0);

  const Endo J = standard_J(1, 1);
  REQUIRE(max_abs(Endo(J.topLeftCorner(2, 2) - J1)) == 0.0);
  REQUIRE(max_abs(Endo(J.bottomRightCorner(2, 2) + J1)) == 0.0);

  for (const auto& [p, q] : {std::pair{1, 1}, std::pair{2, 0}, std::pair{2, 1}}) {
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    const int m = g.dim();
    const Endo Jpq = standard_J(p, q);
    REQUIRE(max_abs(Endo(Jpq * Jpq + Endo::Identity(m, m))) == 0.0);
    REQUIRE(g_skew_residual(g, Jpq) == 0.0);

    GaussianRng rng(17);
    const Endo Jr = random_ocs(p, q, rng);
    REQUIRE(max_abs(Endo(Jr * Jr + Endo::Identity(m, m))) < 1e-12);
    REQUIRE(max_abs(Endo(Jr.transpose() * g.gram() * Jr - g.gram())) < 1e-12);
  }
}

TEST_CASE("eigenprojectors of an isometric complex structure") {
  Endo J(2, 2);
  J << 0, -1, 1, 0;
  const Projectors pr = projectors(J);
  CEndo expected(2, 2);
  const Complex i(0, 1);
  expected << Complex(0.5), 0.5 * i, -0.5 * i, Complex(0.5);
  REQUIRE(max_abs(CEndo(pr.plus - expected)) < 1e-15);
  REQUIRE(max_abs(CEndo(pr.plus + pr.minus - CEndo::Identity(2, 2))) < 1e-15);
  REQUIRE(max_abs(CEndo(pr.plus * pr.plus - pr.plus)) < 1e-15);
  REQUIRE(max_abs(CEndo(J.cast<Complex>() * pr.plus - i * pr.plus)) < 1e-15);
}

TEST_CASE("anticommuting projection") {
  GaussianRng rng(23);
  const DiagonalMetric g = DiagonalMetric::standard(2, 2);
  const Endo J = random_ocs(1, 1, rng);
  const Endo C = rng.gauss_matrix(4, 4);
  const Endo Cp = anticommuting_part(J, C);
  REQUIRE(max_abs(Endo(Cp * J + J * Cp)) < 1e-12);
  REQUIRE(max_abs(Endo(anticommuting_part(J, Cp) - Cp)) < 1e-12);
}

TEST_CASE("m_space_basis has dimension n^2 - n and the right symmetries") {
  for (const auto& [p, q] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
    const int n = p + q;
    const DiagonalMetric g = DiagonalMetric::standard(2 * p, 2 * q);
    const Endo J = standard_J(p, q);
    const auto basis = m_space_basis(g, J);
    REQUIRE(static_cast<int>(basis.size()) == n * n - n);
    for (const Endo& A : basis) {
      REQUIRE(g_skew_residual(g, A) < 1e-9);
      REQUIRE(max_abs(Endo(A * J + J * A)) < 1e-9);
    }
  }
}

TEST_CASE("fibre metric and its index") {
  // -(2n-2) tr(AB) against a manual trace
  GaussianRng rng(31);
  const Endo A = rng.gauss_matrix(4, 4), B = rng.gauss_matrix(4, 4);
  REQUIRE(fiber_metric(2, A, B) == Catch::Approx(-2.0 * (A * B).trace()));

  REQUIRE(fiber_index_formula(2, 0) == 0);
  REQUIRE(fiber_index_formula(1, 1) == 2);
  REQUIRE(fiber_index_formula(2, 1) == 4);
  REQUIRE(fiber_index_formula(0, 2) == 2);

  REQUIRE(fiber_metric_inertia(2, 0) == Inertia{2, 0, 0});
  REQUIRE(fiber_metric_inertia(1, 1) == Inertia{0, 2, 0});
  REQUIRE(fiber_metric_inertia(2, 1) == Inertia{2, 4, 0});
}

TEST_CASE("symmetric-space curvature of the fibre") {
  const DiagonalMetric g = DiagonalMetric::standard(4, 2);
  const Endo J = standard_J(2, 1);
  const auto basis = m_space_basis(g, J);
  const Endo &A = basis[0], &B = basis[1], &C = basis[2];
  const Endo AB = A * B - B * A;
  REQUIRE(max_abs(Endo(symmetric_space_curvature(A, B, C) + (AB * C - C * AB))) == 0.0);
  REQUIRE(max_abs(Endo(symmetric_space_curvature(A, B, C) +
                       symmetric_space_curvature(B, A, C))) < 1e-12);
  // [m, m] subset h: the bracket commutes with J, so R(A,B)C stays in m
  const Endo R = symmetric_space_curvature(A, B, C);
  REQUIRE(max_abs(Endo(R * J + J * R)) < 1e-9);
}
