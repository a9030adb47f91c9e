#include <cmath>

#include "bshift/inner.hpp"
#include "bshift/random_gen.hpp"
#include "doctest.h"

using namespace bshift;

TEST_CASE("evaluate the plain shift symbol") {
  InnerSpec phi = InnerSpec::monomial(1);
  const Complex w = unit_circle(1.3);
  Matrix v = phi.evaluate(w);
  CHECK(std::abs(v(0, 0) - w) < 1e-15);
  CHECK(std::abs(std::abs(v(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("constant inner function evaluates to its isometry") {
  Rng rng(2);
  Matrix iso = random_isometry(rng, 3, 2);
  InnerSpec phi = InnerSpec::constant(iso);
  CHECK((phi.evaluate(Complex(0.3, 0.1)) - iso).norm() < 1e-14);
  CHECK((phi.evaluate(unit_circle(2.0)) - iso).norm() < 1e-14);
}

TEST_CASE("single Blaschke factor at a = 1/2") {
  InnerSpec phi = InnerSpec::scalar_blaschke({Complex(0.5, 0.0)});
  CHECK(std::abs(phi.evaluate(Complex(1.0, 0.0))(0, 0) - Complex(1.0)) <
        1e-14);
  CHECK_THROWS_AS(phi.evaluate(Complex(1.5, 0.0)), std::invalid_argument);
}

TEST_CASE("taylor of the shift symbol") {
  TaylorTable t = taylor(InnerSpec::monomial(1), 8);
  CHECK(t.coeff(0).norm() == 0.0);
  CHECK(std::abs(t.coeff(1)(0, 0) - Complex(1.0)) < 1e-15);
  for (int n = 2; n <= 8; ++n) CHECK(t.coeff(n).norm() == 0.0);
  CHECK(t.tail_bound() == 0.0);
}

TEST_CASE("taylor of (z - 1/2)/(1 - z/2): c0 = -1/2, ck = (3/4)(1/2)^{k-1}") {
  TaylorTable t = taylor(InnerSpec::scalar_blaschke({Complex(0.5, 0.0)}), 12);
  CHECK(std::abs(t.coeff(0)(0, 0) - Complex(-0.5)) < 1e-15);
  double expected = 0.75;
  for (int k = 1; k <= 12; ++k) {
    CHECK(std::abs(t.coeff(k)(0, 0) - Complex(expected)) < 1e-15);
    expected *= 0.5;
  }
}

TEST_CASE("taylor sums back to evaluate at an interior point") {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 4, 0.6);
    TaylorTable table = taylor(phi, 200);
    const Complex w = 0.7 * unit_circle(M_PI / 3.0);
    Matrix sum = Matrix::Zero(phi.codomain_dim(), phi.domain_dim());
    Complex w_pow(1.0, 0.0);
    for (int n = 0; n <= 200; ++n) {
      sum += w_pow * table.coeff(n);
      w_pow *= w;
    }
    CHECK((sum - phi.evaluate(w)).norm() < 1e-8);
  }
}

TEST_CASE("boundary values are isometries") {
  Rng rng(23);
  InnerSpec phi = random_inner_spec(rng, 3, 4, 0.8);
  for (int t = 0; t < 100; ++t) {
    const Complex w = unit_circle(rng.uniform(0.0, 2.0 * M_PI));
    const Vector x = random_vector(rng, phi.domain_dim());
    CHECK((phi.evaluate(w) * x).norm() ==
          doctest::Approx(x.norm()).epsilon(1e-12));
  }
}

TEST_CASE("radial limits approach the boundary value monotonically") {
  Rng rng(27);
  InnerSpec phi = random_inner_spec(rng, 2, 3, 0.7);
  const double theta = rng.uniform(0.0, 2.0 * M_PI);
  const Matrix at_boundary = phi.evaluate(unit_circle(theta));
  double last = 1e9;
  for (double r : {0.9, 0.99, 0.999}) {
    const double gap =
        (phi.evaluate(r * unit_circle(theta)) - at_boundary).norm();
    CHECK(gap < last);
    last = gap;
  }
  CHECK(last < 1e-2);
}

TEST_CASE("multiplication matrix of the shift is the shift matrix") {
  AmbientSpec ambient(1, 4);
  OperatorMatrix m = multiplication_matrix(InnerSpec::monomial(1), ambient);
  CHECK(m.entries.rows() == 5);
  Matrix expected = Matrix::Zero(5, 5);
  for (int n = 0; n < 4; ++n) expected(n + 1, n) = 1.0;
  CHECK((m.entries - expected).norm() < 1e-15);
}

TEST_CASE("multiplication matrix of a constant isometry is block diagonal") {
  Rng rng(31);
  Matrix iso = random_isometry(rng, 2, 1);
  AmbientSpec ambient(2, 3);
  OperatorMatrix m = multiplication_matrix(InnerSpec::constant(iso), ambient);
  CHECK(m.entries.rows() == 8);
  CHECK(m.entries.cols() == 4);
  for (int n = 0; n <= 3; ++n)
    CHECK((m.entries.block(2 * n, n, 2, 1) - iso).norm() < 1e-15);
  CHECK(m.entries.norm() == doctest::Approx(2.0));  // four unit columns
}

TEST_CASE("M_Phi is isometric away from the truncation tail") {
  Rng rng(37);
  for (int t = 0; t < 6; ++t) {
    InnerSpec phi = random_inner_spec(rng, 3, 3, 0.5);
    const int n_max = 96;
    TaylorTable table = taylor(phi, n_max);
    // keep input support where the dropped tail is negligible
    int cutoff = 0;
    while (cutoff < n_max - 1 &&
           table.tail_norm_beyond(n_max - cutoff - 1) < 1e-12)
      ++cutoff;
    REQUIRE(cutoff > 4);
    HardyElement f(phi.domain_dim(), n_max);
    f.coeffs().leftCols(cutoff) =
        random_gaussian_matrix(rng, phi.domain_dim(), cutoff);
    CHECK(table.apply(f).norm() ==
          doctest::Approx(f.norm()).epsilon(1e-10));
  }
}

TEST_CASE("intertwining M_Phi S = S M_Phi on the exact regime") {
  Rng rng(41);
  InnerSpec phi = random_inner_spec(rng, 2, 3, 0.5);
  const int n_max = 96;
  TaylorTable table = taylor(phi, n_max);
  HardyElement f(phi.domain_dim(), n_max);
  f.coeffs().leftCols(20) = random_gaussian_matrix(rng, phi.domain_dim(), 20);
  HardyElement lhs = table.apply(shift(f));
  HardyElement rhs = shift(table.apply(f));
  CHECK((lhs.coeffs() - rhs.coeffs()).norm() < 1e-10 * f.norm());
}

TEST_CASE("model space projection literal cases") {
  SUBCASE("K_z is the constants") {
    HardyElement f(1, 6);
    f.coeffs()(0, 0) = 3.0;
    f.coeffs()(0, 1) = 2.0;
    HardyElement p = model_space_projection(InnerSpec::monomial(1), f);
    CHECK(std::abs(p.coeffs()(0, 0) - Complex(3.0)) < 1e-14);
    CHECK(p.coeffs().rightCols(6).norm() < 1e-14);
  }
  SUBCASE("constant unitary has trivial model space") {
    Rng rng(43);
    Matrix u = random_isometry(rng, 2, 2);
    HardyElement f(2, 8);
    f.coeffs() = random_gaussian_matrix(rng, 2, 9);
    HardyElement p = model_space_projection(InnerSpec::constant(u), f);
    CHECK(p.norm() < 1e-13 * f.norm());
  }
  SUBCASE("K_{z^2} = span{1, z}") {
    HardyElement f(1, 6);
    f.coeffs()(0, 0) = 1.0;
    f.coeffs()(0, 1) = 1.0;
    f.coeffs()(0, 2) = 1.0;
    HardyElement p = model_space_projection(InnerSpec::monomial(2), f);
    CHECK(std::abs(p.coeffs()(0, 0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(p.coeffs()(0, 1) - Complex(1.0)) < 1e-14);
    CHECK(p.coeffs().rightCols(5).norm() < 1e-14);
  }
}

TEST_CASE("model space projection is idempotent and kills the range") {
  Rng rng(47);
  InnerSpec phi = random_inner_spec(rng, 2, 2, 0.5);
  const int n_max = 80;
  TaylorTable table = taylor(phi, n_max);
  HardyElement f(phi.codomain_dim(), n_max);
  f.coeffs().leftCols(30) =
      random_gaussian_matrix(rng, phi.codomain_dim(), 30);
  HardyElement once = model_space_projection(table, f);
  HardyElement twice = model_space_projection(table, once);
  CHECK((once.coeffs() - twice.coeffs()).norm() < 1e-10 * f.norm());
  // orthogonal to Phi * (low degree monomials)
  for (int s = 0; s < 10; ++s) {
    Vector e = random_vector(rng, phi.domain_dim());
    HardyElement range_vec = table.apply(e, s, n_max);
    CHECK(std::abs(inner_product(once, range_vec)) < 1e-9 * f.norm());
  }
}

TEST_CASE("spec validation rejects broken input") {
  Matrix not_iso(2, 2);
  not_iso << 1.0, 0.0, 0.0, 2.0;
  CHECK_THROWS_AS(InnerSpec::constant(not_iso), std::invalid_argument);
  Matrix not_proj(2, 2);
  not_proj << 0.5, 0.4, 0.1, 0.5;
  CHECK_THROWS_AS(
      InnerSpec(Matrix::Identity(2, 2),
                {BlaschkeFactor{Complex(0.3, 0.0), not_proj, false}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      InnerSpec(Matrix::Identity(1, 1),
                {BlaschkeFactor{Complex(1.2, 0.0), Matrix::Identity(1, 1),
                                true}}),
      std::invalid_argument);
}
