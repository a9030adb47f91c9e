#include <cmath>

#include "bshift/random_gen.hpp"
#include "bshift/structure.hpp"
#include "doctest.h"

using namespace bshift;

TEST_CASE("build_reducing literal cases") {
  AmbientSpec ambient(2, 8);

  SUBCASE("G = C^d fills the testable ambient block") {
    SubspaceBasis m =
        build_reducing(ReducingCandidate{Matrix::Identity(2, 2)}, ambient);
    CHECK(m.dim() == 2 + 2 * 8);  // fiber block + degrees 0..7
    CHECK(m.gram_defect() < 1e-14);
  }

  SUBCASE("G = 0 gives the zero subspace") {
    SubspaceBasis m =
        build_reducing(ReducingCandidate{Matrix(2, 0)}, ambient);
    CHECK(m.dim() == 0);
  }

  SUBCASE("G = span e1 in d = 2") {
    Matrix g = Matrix::Zero(2, 1);
    g(0, 0) = 1.0;
    SubspaceBasis m = build_reducing(ReducingCandidate{g}, ambient);
    CHECK(m.dim() == 1 + 8);
    // contains (0, e1) and (z e1, 0), misses (0, e2)
    Vector fiber_e1 = Vector::Zero(ambient.total_dim());
    fiber_e1(ambient.total_dim() - 2) = 1.0;
    CHECK(projection_residual(m.columns, fiber_e1) < 1e-14);
    Vector fiber_e2 = Vector::Zero(ambient.total_dim());
    fiber_e2(ambient.total_dim() - 1) = 1.0;
    CHECK(projection_residual(m.columns, fiber_e2) == doctest::Approx(1.0));
  }
}

TEST_CASE("build_reducing passes verify_reducing across dimensions") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = rng.uniform_int(1, 3);
    AmbientSpec ambient(d, 32);
    BrownianParams params(rng.uniform(0.4, 2.0),
                          rng.uniform(0.0, 2.0 * M_PI), ambient);
    const int r = rng.uniform_int(1, d);
    SubspaceBasis m = build_reducing(
        ReducingCandidate{random_isometry(rng, d, r)}, ambient);
    ReducingReport report = verify_reducing(m, params);
    CHECK(report.reducing);
    CHECK(report.fwd_residual < report.tolerance);
    CHECK(report.adj_residual < report.tolerance);
  }
}

TEST_CASE("a Type I subspace is not reducing") {
  AmbientSpec ambient(1, 24);
  BrownianParams params(1.0, 0.4, ambient);
  SubspaceBasis m = build_type1(InnerSpec::monomial(1), ambient);
  ReducingReport report = verify_reducing(m, params);
  CHECK(!report.reducing);
  // B^*(z, 0) = (1, sigma * 0) + fiber sigma: the constant escapes z H^2
  CHECK(report.adj_residual > 0.9);
}

TEST_CASE("a Type II subspace is not reducing") {
  AmbientSpec ambient(1, 48);
  BrownianParams params(1.0, 0.0, ambient);
  Type2Construction c =
      build_type2(InnerSpec::monomial(2), params, Matrix::Identity(1, 1));
  ReducingReport report = verify_reducing(c.basis, params);
  CHECK(!report.reducing);
}

TEST_CASE("random non-product subspaces fail verify_reducing") {
  Rng rng(11);
  AmbientSpec ambient(2, 24);
  BrownianParams params(1.0, 1.9, ambient);
  for (int t = 0; t < 25; ++t) {
    SubspaceBasis m = random_subspace(rng, ambient, rng.uniform_int(1, 6));
    CHECK(!verify_reducing(m, params).reducing);
  }
}

TEST_CASE("fiber-span extraction recovers G from a product subspace") {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const int d = rng.uniform_int(1, 3);
    AmbientSpec ambient(d, 24);
    const int r = rng.uniform_int(1, d);
    Matrix g = random_isometry(rng, d, r);
    SubspaceBasis m = build_reducing(ReducingCandidate{g}, ambient);
    Matrix extracted = extract_reducing_fiber_span(m);
    REQUIRE(extracted.cols() == r);
    CHECK(max_principal_angle(extracted, g) < 1e-10);
    // rebuilt product space coincides with the original
    SubspaceBasis rebuilt =
        build_reducing(ReducingCandidate{extracted}, ambient);
    CHECK(max_principal_angle(rebuilt.columns, m.columns) < 1e-10);
  }
}

TEST_CASE("irreducibility scan finds nothing in the scalar case") {
  AmbientSpec ambient(1, 32);
  BrownianParams params(1.3, 2.6, ambient);
  IrreducibilityReport report = irreducibility_scan(params, 100, 99);
  CHECK(report.trials == 100);
  CHECK(report.nontrivial_reducing_found == 0);
  CHECK(report.min_residual_observed > 0.0);

  AmbientSpec vector_ambient(2, 16);
  BrownianParams bad(1.0, 0.0, vector_ambient);
  CHECK_THROWS_AS(irreducibility_scan(bad, 5, 1), std::invalid_argument);
}

TEST_CASE("reducing candidate validation") {
  AmbientSpec ambient(2, 8);
  Matrix skew(2, 1);
  skew << 1.0, 1.0;  // not normalized
  CHECK_THROWS_AS(build_reducing(ReducingCandidate{skew}, ambient),
                  std::invalid_argument);
}
