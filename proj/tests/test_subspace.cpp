#include <cmath>

#include "bshift/random_gen.hpp"
#include "bshift/subspace.hpp"
#include "doctest.h"

using namespace bshift;

namespace {

Vector unit_fiber(int d, int j = 0) {
  Vector x = Vector::Zero(d);
  x(j) = 1.0;
  return x;
}

}  // namespace

TEST_CASE("build_type1 for Phi = z spans z..z^{N-1}") {
  AmbientSpec ambient(1, 16);
  SubspaceBasis m = build_type1(InnerSpec::monomial(1), ambient);
  CHECK(m.dim() == 15);  // degrees 1..15 of the ambient polynomial space
  CHECK(m.exactness_margin == 15);
  CHECK(m.gram_defect() < 1e-12);
  CHECK(m.fiber_block().norm() == 0.0);
  // z in the span, 1 orthogonal to it
  HardyElement z(1, 16);
  z.coeffs()(0, 1) = 1.0;
  CHECK(projection_residual(
            m.columns, pack(BrownianElement(z, Vector::Zero(1)))) < 1e-12);
  HardyElement one(1, 16);
  one.coeffs()(0, 0) = 1.0;
  CHECK(projection_residual(
            m.columns, pack(BrownianElement(one, Vector::Zero(1)))) ==
        doctest::Approx(1.0));
}

TEST_CASE("build_type1 for a constant unitary covers the polynomial block") {
  Rng rng(3);
  AmbientSpec ambient(2, 12);
  Matrix u = random_isometry(rng, 2, 2);
  SubspaceBasis m = build_type1(InnerSpec::constant(u), ambient);
  CHECK(m.dim() == 2 * 12);  // degrees 0..11, two fiber directions
  CHECK(m.exactness_margin == 11);
}

TEST_CASE("build_type1 output is invariant and classifies as Type I") {
  Rng rng(5);
  for (int t = 0; t < 8; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 4, 0.5);
    AmbientSpec ambient(phi.codomain_dim(), 96);
    BrownianParams params(rng.uniform(0.4, 2.0),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    SubspaceBasis m = build_type1(phi, ambient);
    InvarianceReport report = verify_invariance(m, params);
    CHECK(report.invariant);
    CHECK(report.max_residual < report.tolerance);
    CHECK(classify(m, params) == SubspaceClass::TypeI);
  }
}

TEST_CASE("gphi element for Phi = z at theta = 0") {
  AmbientSpec ambient(1, 32);
  BrownianParams params(1.0, 0.0, ambient);
  Vector x = unit_fiber(1);
  GPhiElement e = build_gphi_element(InnerSpec::monomial(1), params, x);
  CHECK(!e.flagged);
  CHECK(std::abs(e.y(0) - Complex(1.0)) < 1e-14);
  // g = (z - 1)/(z - 1) = 1
  CHECK(std::abs(e.g.coeffs()(0, 0) - Complex(1.0)) < 1e-13);
  CHECK(e.g.squared_norm() == doctest::Approx(1.0));
}

TEST_CASE("gphi element for Phi = z^2, x = sigma gives g = sigma(1 + z)") {
  AmbientSpec ambient(1, 32);
  for (double sigma : {0.5, 1.0, 2.0}) {
    BrownianParams params(sigma, 0.0, ambient);
    Vector x(1);
    x(0) = sigma;
    GPhiElement e = build_gphi_element(InnerSpec::monomial(2), params, x);
    CHECK(!e.flagged);
    CHECK(std::abs(e.y(0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(e.g.coeffs()(0, 0) - Complex(sigma)) < 1e-13);
    CHECK(std::abs(e.g.coeffs()(0, 1) - Complex(sigma)) < 1e-13);
    CHECK(e.g.squared_norm() == doctest::Approx(2.0 * sigma * sigma));
    // norm constraint |x| = sigma |y|
    CHECK(e.x.norm() == doctest::Approx(sigma * e.y.norm()));
  }
}

TEST_CASE("gphi element is linear in x and zero at x = 0") {
  Rng rng(7);
  InnerSpec phi = random_inner_spec_dims(rng, 3, 2, 3, 0.5);
  AmbientSpec ambient(3, 64);
  BrownianParams params(1.4, 2.1, ambient);

  GPhiElement zero = build_gphi_element(phi, params, Vector::Zero(2));
  CHECK(zero.g.norm() == 0.0);
  CHECK(zero.y.norm() == 0.0);

  Vector x1 = random_vector(rng, 2);
  Vector x2 = random_vector(rng, 2);
  const Complex a(0.7, -0.2), b(-1.1, 0.4);
  GPhiElement e1 = build_gphi_element(phi, params, x1);
  GPhiElement e2 = build_gphi_element(phi, params, x2);
  GPhiElement mix = build_gphi_element(phi, params, a * x1 + b * x2);
  CHECK((mix.g.coeffs() - (a * e1.g.coeffs() + b * e2.g.coeffs())).norm() <
        1e-11);
  CHECK((mix.y - (a * e1.y + b * e2.y)).norm() < 1e-12);
}

TEST_CASE("gphi invariants: y nonzero, g in the model space, boundary id") {
  Rng rng(9);
  for (int t = 0; t < 8; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 3, 0.5);
    AmbientSpec ambient(phi.codomain_dim(), 96);
    BrownianParams params(rng.uniform(0.5, 1.8),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    Vector x = random_vector(rng, phi.domain_dim());
    GPhiElement e = build_gphi_element(phi, params, x);
    CHECK(!e.flagged);
    CHECK(e.y.norm() > 0.0);
    CHECK(e.x.norm() ==
          doctest::Approx(params.sigma * e.y.norm()).epsilon(1e-10));
    // g orthogonal to Phi H^2
    TaylorTable table = taylor(phi, ambient.max_degree);
    HardyElement proj = model_space_projection(table, e.g);
    CHECK((proj.coeffs() - e.g.coeffs()).norm() < 1e-9 * (1.0 + e.g.norm()));
    // boundary identity Phi(e^{i theta}) x = sigma y
    const Matrix bval = phi.evaluate(params.boundary_point());
    CHECK((bval * e.x - params.sigma * e.y).norm() < 1e-10);
  }
}

TEST_CASE("build_type2 scalar Agler-Stankus shape") {
  AmbientSpec ambient(1, 64);
  BrownianParams params(1.0, 0.0, ambient);
  Type2Construction c =
      build_type2(InnerSpec::monomial(2), params, Matrix::Identity(1, 1));
  CHECK(c.defect_block.dim() == 1);
  CHECK(c.basis.dim() == c.type1_block.dim() + 1);
  CHECK(c.basis.gram_defect() < 1e-12);
  // defect column is ([1+z; 1]) / sqrt(3)
  BrownianElement defect = unpack(c.defect_block.columns.col(0), ambient);
  const double scale = std::sqrt(3.0);
  CHECK(std::abs(defect.analytic.coeffs()(0, 0) * scale - Complex(1.0)) <
        1e-12);
  CHECK(std::abs(defect.analytic.coeffs()(0, 1) * scale - Complex(1.0)) <
        1e-12);
  CHECK(std::abs(defect.fiber(0) * scale - Complex(1.0)) < 1e-12);

  InvarianceReport report = verify_invariance(c.basis, params);
  CHECK(report.invariant);
  CHECK(classify(c.basis, params) == SubspaceClass::TypeII);
}

TEST_CASE("build_type2 sweep: invariance, classification, orthogonality") {
  Rng rng(13);
  for (int t = 0; t < 8; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 4, 0.5);
    AmbientSpec ambient(phi.codomain_dim(), 96);
    BrownianParams params(rng.uniform(0.4, 2.0),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    const int r = rng.uniform_int(1, phi.domain_dim());
    Matrix x_space = random_gaussian_matrix(rng, phi.domain_dim(), r);
    Type2Construction c = build_type2(phi, params, x_space);
    CHECK(c.defect_block.dim() == r);
    CHECK(verify_invariance(c.basis, params).invariant);
    CHECK(classify(c.basis, params) == SubspaceClass::TypeII);
    // <G> orthogonal to Phi H^2 + {0}
    Matrix cross =
        c.defect_block.columns.adjoint() * c.type1_block.columns;
    CHECK(cross.norm() < 1e-10);
  }
}

TEST_CASE("a bare fiber line is not invariant") {
  AmbientSpec ambient(1, 24);
  for (double sigma : {0.5, 1.0, 2.0}) {
    BrownianParams params(sigma, 1.0, ambient);
    Matrix col = Matrix::Zero(ambient.total_dim(), 1);
    col(ambient.total_dim() - 1, 0) = 1.0;
    SubspaceBasis m = make_subspace_basis(col, ambient, "fiber-line");
    InvarianceReport report = verify_invariance(m, params);
    CHECK(!report.invariant);
    // B(0,x) = (sigma x, e^{i t} x); its distance from the line is sigma
    CHECK(report.max_residual == doctest::Approx(sigma).epsilon(1e-12));
    CHECK(classify(m, params) == SubspaceClass::NotInvariant);
  }
}

TEST_CASE("random subspaces are not invariant") {
  Rng rng(17);
  AmbientSpec ambient(2, 32);
  BrownianParams params(1.0, 0.3, ambient);
  for (int t = 0; t < 10; ++t) {
    SubspaceBasis m = random_subspace(rng, ambient, rng.uniform_int(1, 5));
    CHECK(classify(m, params) == SubspaceClass::NotInvariant);
  }
}

TEST_CASE("canonical decomposition of the z^2 Agler-Stankus subspace") {
  AmbientSpec ambient(1, 64);
  BrownianParams params(1.0, 0.0, ambient);
  InnerSpec phi = InnerSpec::monomial(2);
  Type2Construction c = build_type2(phi, params, Matrix::Identity(1, 1));
  CanonicalDecomposition d =
      canonical_decomposition(c.basis, params, &phi);

  CHECK(d.defect.dim() == 1);
  CHECK(d.m0.dim() == c.type1_block.dim());
  CHECK(max_principal_angle(d.m0.columns, c.type1_block.columns) < 1e-10);
  CHECK(max_principal_angle(d.defect.columns, c.defect_block.columns) <
        1e-10);
  REQUIRE(d.elements.size() == 1);
  // rescaling the unit defect column to y = 1 gives the spec element, whose
  // parameter has |x| = sigma * 1
  const double y_norm = d.elements[0].y.norm();
  CHECK(y_norm == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(d.elements[0].x.norm() / y_norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.elements[0].build_residual < 1e-10);
  // defect element satisfies |x| = sigma |y|
  CHECK(d.elements[0].x.norm() ==
        doctest::Approx(params.sigma * d.elements[0].y.norm())
            .epsilon(1e-10));
}

TEST_CASE("canonical decomposition of a Type I input keeps everything in M0") {
  AmbientSpec ambient(1, 32);
  BrownianParams params(1.0, 0.0, ambient);
  SubspaceBasis m = build_type1(InnerSpec::monomial(1), ambient);
  CanonicalDecomposition d = canonical_decomposition(m, params);
  CHECK(d.defect.dim() == 0);
  CHECK(d.m0.dim() == m.dim());

  SubspaceBasis empty = make_subspace_basis(
      Matrix(ambient.total_dim(), 0), ambient, "zero");
  CHECK_THROWS_AS(canonical_decomposition(empty, params),
                  std::invalid_argument);
}

TEST_CASE("x parameters recovered through the construction match") {
  Rng rng(19);
  for (int t = 0; t < 6; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 3, 0.5);
    AmbientSpec ambient(phi.codomain_dim(), 96);
    BrownianParams params(rng.uniform(0.5, 1.6),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    Vector x = random_vector(rng, phi.domain_dim());
    GPhiElement e = build_gphi_element(phi, params, x);
    TaylorTable table = taylor(phi, ambient.max_degree);
    XRecovery rec = recover_parameter(table, params, e.g, e.y);
    CHECK((rec.x - x).norm() < 1e-9 * (1.0 + x.norm()));
    CHECK(rec.identity_residual < 1e-9 * (1.0 + x.norm()));
    CHECK(rec.higher_order < 1e-9 * (1.0 + x.norm()));
  }
}

TEST_CASE("wandering subspace captures the Beurling multiplicity") {
  AmbientSpec ambient(1, 32);

  SUBCASE("M0 = z H^2 has wandering span z") {
    SubspaceBasis m0 = build_type1(InnerSpec::monomial(1), ambient);
    SubspaceBasis w = wandering_subspace(m0, ambient);
    CHECK(w.dim() == 1);
    HardyElement z(1, 32);
    z.coeffs()(0, 1) = 1.0;
    CHECK(projection_residual(w.columns,
                              pack(BrownianElement(z, Vector::Zero(1)))) <
          1e-10);
  }

  SUBCASE("M0 = z^2 H^2 has wandering span z^2") {
    SubspaceBasis m0 = build_type1(InnerSpec::monomial(2), ambient);
    SubspaceBasis w = wandering_subspace(m0, ambient);
    CHECK(w.dim() == 1);
    HardyElement z2(1, 32);
    z2.coeffs()(0, 2) = 1.0;
    CHECK(projection_residual(w.columns,
                              pack(BrownianElement(z2, Vector::Zero(1)))) <
          1e-10);
  }

  SUBCASE("diagonal Potapov product on d = 2 has multiplicity 2") {
    Rng rng(23);
    AmbientSpec ambient2(2, 64);
    InnerSpec phi = random_inner_spec_dims(rng, 2, 2, 3, 0.5);
    SubspaceBasis m0 = build_type1(phi, ambient2);
    SubspaceBasis w = wandering_subspace(m0, ambient2);
    CHECK(w.dim() == 2);
  }
}

TEST_CASE("rank ambiguity is refused rather than guessed") {
  // A fiber singular value within a factor of ten of the threshold must
  // throw instead of producing a wrong split.
  AmbientSpec ambient(2, 8);
  Matrix cols = Matrix::Zero(ambient.total_dim(), 2);
  cols(ambient.total_dim() - 2, 0) = 1.0;  // pure fiber column, direction e1
  cols(2, 1) = std::sqrt(1.0 - 9e-14);     // z in direction e1
  cols(ambient.total_dim() - 1, 1) = 3e-7;  // fiber mass e2, in the band
  SubspaceBasis m = make_subspace_basis(cols, ambient, "ambiguous");
  BrownianParams params(1.0, 0.0, ambient);
  CHECK_THROWS_AS(canonical_decomposition(m, params), RankAmbiguityError);
}
