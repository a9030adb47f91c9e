#pragma once

#include <vector>

#include "bshift/hardy.hpp"
#include "bshift/linalg.hpp"
#include "bshift/types.hpp"

namespace bshift {

// One elementary factor B_{a,P}(z) = I - P + ((z-a)/(1 - conj(a) z)) P with
// |a| < 1 and P an orthogonal projection on the codomain. P = I gives the
// plain scalar Blaschke factor; every factor is unitary on the circle.
struct BlaschkeFactor {
  Complex zero;
  Matrix projection;
  bool full_projection;  // serialized as kind "scalar" when P = I
};

// Rational inner function Phi(z) = B_1(z) ... B_m(z) V, with the moving
// factors square on the codomain and the constant isometry V handling any
// domain/codomain dimension gap. Boundary values are isometries everywhere
// on the circle, so the radial-limit questions of the general theory do not
// arise here.
class InnerSpec {
 public:
  InnerSpec(Matrix constant_factor, std::vector<BlaschkeFactor> factors,
            double validation_tol = 1e-10);

  static InnerSpec monomial(int power);  // scalar z^k
  static InnerSpec scalar_blaschke(const std::vector<Complex>& zeros);
  static InnerSpec constant(Matrix isometry);

  int domain_dim() const { return static_cast<int>(constant_factor_.cols()); }
  int codomain_dim() const {
    return static_cast<int>(constant_factor_.rows());
  }
  bool is_scalar() const { return domain_dim() == 1 && codomain_dim() == 1; }

  const Matrix& constant_factor() const { return constant_factor_; }
  const std::vector<BlaschkeFactor>& factors() const { return factors_; }

  // Pointwise value at |w| <= 1; an isometry for |w| = 1. Rejects |w| > 1.
  Matrix evaluate(Complex w) const;

 private:
  Matrix constant_factor_;
  std::vector<BlaschkeFactor> factors_;
};

// Taylor coefficients of an InnerSpec up to a fixed degree, with a certified
// bound on the coefficient mass beyond it.
class TaylorTable {
 public:
  TaylorTable(std::vector<Matrix> coeffs, double tail_bound);

  int max_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int domain_dim() const { return static_cast<int>(coeffs_[0].cols()); }
  int codomain_dim() const { return static_cast<int>(coeffs_[0].rows()); }
  const Matrix& coeff(int n) const { return coeffs_[n]; }

  // l1 bound on sum of coefficient operator norms beyond max_degree().
  double tail_bound() const { return tail_bound_; }

  // sqrt(sum_{n>m} |c_n|_F^2) measured inside the table, plus the analytic
  // bound for what lies beyond it.
  double tail_norm_beyond(int m) const;

  // Largest n with |c_n|_F > tol; -1 when all are below.
  int numeric_degree(double tol) const;

  // Truncated multiplication M_Phi f (tail beyond the output degree drops).
  HardyElement apply(const HardyElement& f) const;

  // Phi * (z^degree_shift x) as a truncated element of degree max_degree.
  HardyElement apply(const Vector& x, int degree_shift, int max_degree) const;

  // M_Phi^* f; exact on the truncated space.
  HardyElement apply_adjoint(const HardyElement& f) const;

 private:
  std::vector<Matrix> coeffs_;
  double tail_bound_;
};

// Exact factor-by-factor expansion of the spec, truncated at max_degree:
// (z-a)/(1-conj(a)z) = -a + (1-|a|^2) sum_{k>=1} conj(a)^{k-1} z^k, factors
// combined by convolution. Coefficients inside the table are exact up to
// rounding; the geometric mass beyond it is summed into tail_bound().
TaylorTable taylor(const InnerSpec& spec, int max_degree);

// l1 bound on the coefficient operator norms of the spec beyond the given
// degree, from the per-factor absolute series.
double coefficient_tail_bound(const InnerSpec& spec, int beyond_degree);

// Block-Toeplitz lower-triangular realization of M_Phi from truncated
// H^2_{E2} into truncated H^2_E.
OperatorMatrix multiplication_matrix(const InnerSpec& spec,
                                     const AmbientSpec& ambient);

// f - M_Phi M_Phi^* f, the projection onto the model space K_Phi.
HardyElement model_space_projection(const TaylorTable& table,
                                    const HardyElement& f);
HardyElement model_space_projection(const InnerSpec& spec,
                                    const HardyElement& f);

}  // namespace bshift
