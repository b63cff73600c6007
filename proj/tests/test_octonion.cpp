#include <catch2/catch_amalgamated.hpp>

#include <twistor/octonion.hpp>

using namespace twistor;

namespace {

Vec imag_sphere_point(OctFlavor f, GaussianRng& rng) {
  const DiagonalMetric g7 = imag_oct_metric(f);
  for (;;) {
    const Vec x = rng.gauss_vector(7);
    const double qq = g7.inner(x, x);
    if (qq > 0.05) return Vec(x / std::sqrt(qq));
  }
}

Vec imag_tangent(OctFlavor f, const Vec& x, GaussianRng& rng) {
  const DiagonalMetric g7 = imag_oct_metric(f);
  Vec v = rng.gauss_vector(7);
  v -= g7.inner(v, x) * x;
  return Vec(v / v.norm());
}

}  // namespace

TEST_CASE("quaternion layer: definite flavor is the classical algebra") {
  const OctFlavor f = OctFlavor::definite;
  const Quat i = quat(0.0, V3(1, 0, 0));
  const Quat j = quat(0.0, V3(0, 1, 0));
  const Quat k = quat(0.0, V3(0, 0, 1));
  REQUIRE((quat_mul(f, i, j) - k).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((quat_mul(f, j, i) + k).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((quat_mul(f, i, i) - quat(-1.0, V3::Zero())).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(quat_norm2(f, quat(1.0, V3(1, 1, 1))) == Catch::Approx(4.0));
}

TEST_CASE("quaternion layer: split flavor squares e2, e3 to +1") {
  const OctFlavor f = OctFlavor::split;
  const Quat e2 = quat(0.0, V3(0, 1, 0));
  const Quat e3 = quat(0.0, V3(0, 0, 1));
  REQUIRE((quat_mul(f, e2, e2) - quat(1.0, V3::Zero())).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((quat_mul(f, e3, e3) - quat(1.0, V3::Zero())).cwiseAbs().maxCoeff() == 0.0);
  const Quat e1 = quat(0.0, V3(1, 0, 0));
  REQUIRE((quat_mul(f, e1, e1) + quat(1.0, V3::Zero())).cwiseAbs().maxCoeff() == 0.0);
  // e1 e2 = -e3 in the split convention
  REQUIRE((quat_mul(f, e1, e2) + e3).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((lorentz_cross(f, V3(1, 0, 0), V3(0, 1, 0)) - V3(0, 0, -1)).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("quaternion norms are multiplicative in both flavors") {
  for (const OctFlavor f : {OctFlavor::definite, OctFlavor::split}) {
    GaussianRng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const Quat a = rng.gauss_vector(4), b = rng.gauss_vector(4);
      const double lhs = quat_norm2(f, quat_mul(f, a, b));
      const double rhs = quat_norm2(f, a) * quat_norm2(f, b);
      REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      // associativity spot check
      const Quat c = rng.gauss_vector(4);
      REQUIRE((quat_mul(f, quat_mul(f, a, b), c) - quat_mul(f, a, quat_mul(f, b, c)))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("imaginary cross of pure quaternions reduces to the signed cross") {
  for (const OctFlavor f : {OctFlavor::definite, OctFlavor::split}) {
    GaussianRng rng(5);
    const V3 a = rng.gauss_vector(3), b = rng.gauss_vector(3);
    const V3 got = quat_cross(f, quat(0.0, a), quat(0.0, b));
    REQUIRE((got - lorentz_cross(f, a, b)).cwiseAbs().maxCoeff() < 1e-13);
    // g(u x v, w) = det[u; v; w] up to the flavor weights: total antisymmetry
    const DiagonalMetric g3 = lorentz3_metric(f);
    const V3 c = rng.gauss_vector(3);
    REQUIRE(std::abs(g3.inner(Vec(lorentz_cross(f, a, b)), Vec(c)) +
                     g3.inner(Vec(lorentz_cross(f, b, a)), Vec(c))) < 1e-13);
    REQUIRE(std::abs(g3.inner(Vec(lorentz_cross(f, a, b)), Vec(a))) < 1e-13);
  }
}

TEST_CASE("doubled cross product: invariants of the corrected pair formula") {
  for (const OctFlavor f : {OctFlavor::definite, OctFlavor::split}) {
    const DiagonalMetric g8 = oct_metric(f);
    GaussianRng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const Oct u = embed_imag(rng.gauss_vector(7));
      const Oct v = embed_imag(rng.gauss_vector(7));
      const Oct uv = octonion_cross(f, u, v);
      REQUIRE((uv + octonion_cross(f, v, u)).cwiseAbs().maxCoeff() < 1e-12);
      REQUIRE(std::abs(g8.inner(Vec(uv), Vec(u))) < 1e-12);
      REQUIRE(std::abs(g8.inner(Vec(uv), Vec(v))) < 1e-12);
      REQUIRE(std::abs(uv[0]) < 1e-13);  // stays imaginary
    }
  }
}

TEST_CASE("J6: the cross with a unit imaginary base point is an isometric complex structure") {
  for (const OctFlavor f : {OctFlavor::definite, OctFlavor::split}) {
    const DiagonalMetric g7 = imag_oct_metric(f);
    GaussianRng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const Vec x = imag_sphere_point(f, rng);
      const Vec u = imag_tangent(f, x, rng), v = imag_tangent(f, x, rng);
      const Endo M = j6_matrix(f, x);
      REQUIRE((M * (M * u) + u).cwiseAbs().maxCoeff() < 1e-12);
      REQUIRE(std::abs(g7.inner(Vec(M * u), Vec(M * v)) - g7.inner(u, v)) < 1e-12);
      REQUIRE(std::abs(g7.inner(Vec(M * u), u)) < 1e-12);
      REQUIRE((M * x).cwiseAbs().maxCoeff() < 1e-12);  // annihilates the normal
    }
    REQUIRE_THROWS_AS(j6_matrix(f, Vec(Vec::Zero(7))), NotOnSphere);
  }
}

TEST_CASE("the literal doubling pair fails the structure invariants") {
  // the second component read with both conjugations on the second factors
  // does not reproduce J^2 = -1; the Cayley-Dickson pairing does
  const OctFlavor f = OctFlavor::split;
  GaussianRng rng(13);
  double printed_worst = 0.0, cd_worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const Vec x = imag_sphere_point(f, rng);
    const Vec u = imag_tangent(f, x, rng);
    const Oct X = embed_imag(x);
    const auto apply = [&](auto&& cross) {
      const Vec Ju = drop_imag(cross(f, X, embed_imag(u)));
      const Vec JJu = drop_imag(cross(f, X, embed_imag(Ju)));
      return (JJu + u).cwiseAbs().maxCoeff();
    };
    printed_worst = std::max(printed_worst,
                             apply([](OctFlavor fl, const Oct& a, const Oct& b) {
                               return octonion_cross_printed(fl, a, b);
                             }));
    cd_worst = std::max(cd_worst, apply([](OctFlavor fl, const Oct& a, const Oct& b) {
                          return octonion_cross(fl, a, b);
                        }));
  }
  REQUIRE(cd_worst < 1e-11);
  REQUIRE(printed_worst > 1e-2);
}

TEST_CASE("nearly pseudo-Kaehler property and non-integrability of J6") {
  for (const OctFlavor f : {OctFlavor::definite, OctFlavor::split}) {
    GaussianRng rng(17);
    const FdGeometry geo = FdGeometry::sphere(oct_sphere(f));
    const JSection jsec = j6_section(f);
    double max_n = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Vec x = imag_sphere_point(f, rng);
      const Vec u = imag_tangent(f, x, rng), v = imag_tangent(f, x, rng);
      REQUIRE(nearly_kahler_residual(f, x, u, 1e-3) < 5e-4);
      max_n = std::max(max_n, nijenhuis(geo, jsec, x, u, v, 1e-3).cwiseAbs().maxCoeff());
    }
    REQUIRE(max_n > 0.05);  // J6 is not integrable
  }
  REQUIRE_THROWS_AS(nearly_kahler_residual(OctFlavor::definite, Vec(Vec::Zero(7)),
                                           Vec(Vec::Unit(7, 0)), 1e-3),
                    NotOnSphere);
  REQUIRE_THROWS_AS(nearly_kahler_residual(OctFlavor::definite, Vec(Vec::Unit(7, 0)),
                                           Vec(Vec::Unit(7, 0)), 1e-3),
                    NotTangent);
}

TEST_CASE("embedding round trips") {
  GaussianRng rng(19);
  const Vec x = rng.gauss_vector(7);
  REQUIRE((drop_imag(embed_imag(x)) - x).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(embed_imag(x)[0] == 0.0);
  REQUIRE_THROWS_AS(embed_imag(Vec(Vec::Zero(6))), DimensionMismatch);
}
