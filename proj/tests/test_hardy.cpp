#include <cmath>
#include <limits>

#include "bshift/hardy.hpp"
#include "bshift/random_gen.hpp"
#include "doctest.h"

using namespace bshift;

namespace {

HardyElement scalar_poly(std::initializer_list<Complex> coeffs,
                         int max_degree) {
  HardyElement f(1, max_degree);
  int n = 0;
  for (Complex c : coeffs) f.coeffs()(0, n++) = c;
  return f;
}

// Exact convolution (z - w) * q, the symbolic oracle for division checks.
HardyElement multiply_by_zeta(const HardyElement& q, double theta) {
  const Complex w = unit_circle(theta);
  HardyElement out = shift(q);
  out -= HardyElement(Matrix(w * q.coeffs()));
  return out;
}

}  // namespace

TEST_CASE("shift moves coefficients up one degree") {
  HardyElement f = scalar_poly({1.0}, 6);
  HardyElement zf = shift(f);
  CHECK(zf.coeffs()(0, 0) == Complex(0.0));
  CHECK(zf.coeffs()(0, 1) == Complex(1.0));
  CHECK(zf.support_degree() == 1);
  CHECK(shift_loss(f) == 0.0);
}

TEST_CASE("shift drops the top coefficient and reports the loss") {
  HardyElement f(1, 5);
  f.coeffs()(0, 5) = 1.0;
  CHECK(shift_loss(f) == 1.0);
  CHECK(shift(f).norm() == 0.0);
}

TEST_CASE("shift of 3 + 2z") {
  HardyElement f = scalar_poly({3.0, 2.0}, 4);
  HardyElement zf = shift(f);
  CHECK(zf.coeffs()(0, 1) == Complex(3.0));
  CHECK(zf.coeffs()(0, 2) == Complex(2.0));
  CHECK(zf.norm() == doctest::Approx(f.norm()));
}

TEST_CASE("shift_adjoint basics") {
  CHECK(shift_adjoint(scalar_poly({0.0, 1.0}, 4)).coeffs()(0, 0) ==
        Complex(1.0));
  CHECK(shift_adjoint(scalar_poly({1.0}, 4)).norm() == 0.0);
}

TEST_CASE("shift_adjoint undoes shift below the boundary") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    HardyElement f(2, 16);
    f.coeffs() = random_gaussian_matrix(rng, 2, 17);
    f.coeffs().col(16).setZero();
    HardyElement back = shift_adjoint(shift(f));
    CHECK((back.coeffs() - f.coeffs()).norm() < 1e-14 * f.norm());
  }
}

TEST_CASE("include_fiber is the constant function and an isometry") {
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  HardyElement f = include_fiber(e1, 8);
  CHECK(f.coeff(0)(0) == Complex(1.0));
  CHECK(f.support_degree() == 0);
  CHECK(f.norm() == doctest::Approx(1.0));

  Rng rng(5);
  Vector x = random_vector(rng, 3);
  CHECK(include_fiber(x, 6).norm() == doctest::Approx(x.norm()));
  // adjoint identity <i_E x, f> = <x, f_0>
  HardyElement g(3, 6);
  g.coeffs() = random_gaussian_matrix(rng, 3, 7);
  const Complex lhs = inner_product(include_fiber(x, 6), g);
  const Complex rhs = (x.array() * g.coeff(0).array().conjugate()).sum();
  CHECK(std::abs(lhs - rhs) < 1e-14);
  CHECK((include_fiber_adjoint(g) - g.coeff(0)).norm() == 0.0);
}

TEST_CASE("monomial inner products") {
  HardyElement one = scalar_poly({1.0}, 4);
  HardyElement z = scalar_poly({0.0, 1.0}, 4);
  CHECK(inner_product(z, z) == Complex(1.0));
  CHECK(inner_product(one, z) == Complex(0.0));
}

TEST_CASE("inner product is conjugate linear in the second argument") {
  Rng rng(7);
  HardyElement a(2, 10), b(2, 10);
  a.coeffs() = random_gaussian_matrix(rng, 2, 11);
  b.coeffs() = random_gaussian_matrix(rng, 2, 11);
  const Complex alpha(0.3, -1.2);
  const Complex lhs = inner_product(a, alpha * b);
  const Complex rhs = std::conj(alpha) * inner_product(a, b);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("direct sum norm on BrownianElement") {
  Rng rng(3);
  HardyElement f(2, 8);
  f.coeffs() = random_gaussian_matrix(rng, 2, 9);
  Vector x = random_vector(rng, 2);
  BrownianElement v(f, x);
  CHECK(v.squared_norm() ==
        doctest::Approx(f.squared_norm() + x.squaredNorm()));
  CHECK(std::abs(inner_product(v, v) - Complex(v.squared_norm())) < 1e-13);
}

TEST_CASE("adjoint pairing <S a, b> = <a, S* b>") {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    HardyElement a(2, 12), b(2, 12);
    a.coeffs() = random_gaussian_matrix(rng, 2, 13);
    a.coeffs().col(12).setZero();
    b.coeffs() = random_gaussian_matrix(rng, 2, 13);
    const Complex lhs = inner_product(shift(a), b);
    const Complex rhs = inner_product(a, shift_adjoint(b));
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
}

TEST_CASE("divide_by_zeta literal examples") {
  SUBCASE("h = z - e^{i theta}") {
    const double theta = 0.7;
    HardyElement h(1, 6);
    h.coeffs()(0, 0) = -unit_circle(theta);
    h.coeffs()(0, 1) = 1.0;
    DivisionResult r = divide_by_zeta(h, theta);
    CHECK(r.residual < 1e-14);
    CHECK(!r.flagged);
    CHECK(std::abs(r.quotient.coeffs()(0, 0) - Complex(1.0)) < 1e-14);
    CHECK(r.quotient.support_degree(1e-14) == 0);
  }
  SUBCASE("z^2 - 1 over z - 1") {
    HardyElement h = scalar_poly({-1.0, 0.0, 1.0}, 6);
    DivisionResult r = divide_by_zeta(h, 0.0);
    CHECK(r.residual < 1e-14);
    CHECK(std::abs(r.quotient.coeffs()(0, 0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(r.quotient.coeffs()(0, 1) - Complex(1.0)) < 1e-14);
  }
  SUBCASE("z^3 - 1 over z - 1 has |g|^2 = 3") {
    HardyElement h = scalar_poly({-1.0, 0.0, 0.0, 1.0}, 6);
    DivisionResult r = divide_by_zeta(h, 0.0);
    CHECK(r.residual < 1e-14);
    CHECK(r.quotient.squared_norm() == doctest::Approx(3.0));
    for (int n = 0; n < 3; ++n)
      CHECK(std::abs(r.quotient.coeffs()(0, n) - Complex(1.0)) < 1e-14);
  }
}

TEST_CASE("divide_by_zeta recovers random symbolic quotients") {
  Rng rng(29);
  for (int t = 0; t < 25; ++t) {
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const int d = rng.uniform_int(1, 3);
    HardyElement q(d, 32);
    q.coeffs() = random_gaussian_matrix(rng, d, 33);
    q.coeffs().col(32).setZero();
    HardyElement h = multiply_by_zeta(q, theta);
    DivisionResult r = divide_by_zeta(h, theta);
    CHECK(!r.flagged);
    CHECK((r.quotient.coeffs() - q.coeffs()).norm() < 1e-12 * q.norm());
    // division contract
    HardyElement check = multiply_by_zeta(r.quotient, theta);
    check -= h;
    CHECK(check.norm() <=
          r.residual + 32 * std::numeric_limits<double>::epsilon() * h.norm());
  }
}

TEST_CASE("divide_by_zeta flags numerators that miss the boundary zero") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    HardyElement q(1, 24);
    q.coeffs() = random_gaussian_matrix(rng, 1, 25);
    q.coeffs().col(24).setZero();
    HardyElement h = multiply_by_zeta(q, theta);
    h.coeffs()(0, 0) += 0.01;  // boundary value now 0.01
    DivisionResult r = divide_by_zeta(h, theta);
    CHECK(r.flagged);
    CHECK(r.boundary_value == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(r.residual == doctest::Approx(0.01).epsilon(1e-6));
  }
}

TEST_CASE("tail-sum and forward recursion agree on exact numerators") {
  Rng rng(37);
  const double theta = 1.9;
  HardyElement q(1, 20);
  q.coeffs() = random_gaussian_matrix(rng, 1, 21);
  q.coeffs().col(20).setZero();
  HardyElement h = multiply_by_zeta(q, theta);
  HardyElement a = divide_by_zeta(h, theta).quotient;
  HardyElement b = divide_by_zeta_forward(h, theta);
  CHECK((a.coeffs() - b.coeffs()).norm() < 1e-12);
}

TEST_CASE("pack and unpack round trip") {
  Rng rng(41);
  AmbientSpec ambient(3, 9);
  HardyElement f(3, 9);
  f.coeffs() = random_gaussian_matrix(rng, 3, 10);
  BrownianElement v(f, random_vector(rng, 3));
  BrownianElement back = unpack(pack(v), ambient);
  CHECK((back.analytic.coeffs() - v.analytic.coeffs()).norm() == 0.0);
  CHECK((back.fiber - v.fiber).norm() == 0.0);
  CHECK(pack(v).size() == ambient.total_dim());
}

TEST_CASE("degenerate ambient parameters are rejected") {
  CHECK_THROWS_AS(AmbientSpec(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(AmbientSpec(1, 0), std::invalid_argument);
  HardyElement a(1, 4), b(2, 4);
  CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
}
