#pragma once

#include <utility>

#include "bshift/tolerance.hpp"
#include "bshift/types.hpp"

namespace bshift {

// Truncation parameters of the ambient space H^2_E(T) + E: fiber dimension d
// and maximal stored degree N.
struct AmbientSpec {
  int fiber_dim;
  int max_degree;

  AmbientSpec(int d, int n);

  int hardy_dim() const { return fiber_dim * (max_degree + 1); }
  int total_dim() const { return hardy_dim() + fiber_dim; }

  friend bool operator==(const AmbientSpec& a, const AmbientSpec& b) {
    return a.fiber_dim == b.fiber_dim && a.max_degree == b.max_degree;
  }
};

// E-valued analytic function stored as Fourier coefficients up to degree N.
// Column n of coeffs() is the C^d coefficient of z^n. Parseval at truncation:
// |f|^2 = sum_n |coeffs[n]|^2.
class HardyElement {
 public:
  HardyElement(int fiber_dim, int max_degree);  // zero element
  explicit HardyElement(Matrix coeffs);

  int fiber_dim() const { return static_cast<int>(coeffs_.rows()); }
  int max_degree() const { return static_cast<int>(coeffs_.cols()) - 1; }

  const Matrix& coeffs() const { return coeffs_; }
  Matrix& coeffs() { return coeffs_; }
  Vector coeff(int n) const { return coeffs_.col(n); }
  void set_coeff(int n, const Vector& c) { coeffs_.col(n) = c; }

  double squared_norm() const { return coeffs_.squaredNorm(); }
  double norm() const { return coeffs_.norm(); }

  // Largest degree whose coefficient norm exceeds tol; -1 when none does.
  int support_degree(double tol = 0.0) const;

  // Value of the stored polynomial at w (Horner).
  Vector evaluate(Complex w) const;

  HardyElement& operator+=(const HardyElement& rhs);
  HardyElement& operator-=(const HardyElement& rhs);
  HardyElement& operator*=(Complex s);
  friend HardyElement operator+(HardyElement a, const HardyElement& b) {
    a += b;
    return a;
  }
  friend HardyElement operator-(HardyElement a, const HardyElement& b) {
    a -= b;
    return a;
  }
  friend HardyElement operator*(Complex s, HardyElement f) {
    f *= s;
    return f;
  }

 private:
  Matrix coeffs_;  // d x (N+1)
};

// A point of H^2_E(T) + E.
struct BrownianElement {
  HardyElement analytic;
  Vector fiber;

  BrownianElement(HardyElement f, Vector x);
  static BrownianElement zero(const AmbientSpec& ambient);

  double squared_norm() const {
    return analytic.squared_norm() + fiber.squaredNorm();
  }
  double norm() const;
};

// Multiplication by z. The degree-N coefficient of f is dropped; the drop
// magnitude is shift_loss(f).
HardyElement shift(const HardyElement& f);
double shift_loss(const HardyElement& f);

// Backward shift S^*; exact at truncation.
HardyElement shift_adjoint(const HardyElement& f);

// i_E: the constant function with value x.
HardyElement include_fiber(const Vector& x, int max_degree);

// i_E^*: the degree-0 coefficient.
Vector include_fiber_adjoint(const HardyElement& f);

// Conjugate-linear in the second argument.
Complex inner_product(const HardyElement& a, const HardyElement& b);
Complex inner_product(const BrownianElement& a, const BrownianElement& b);

struct DivisionResult {
  HardyElement quotient;
  double residual;        // |truncate((z - e^{i theta}) q) - h|
  double boundary_value;  // |h(e^{i theta})|
  bool flagged;           // boundary value exceeded tolerance: no H^2 quotient
};

// Solves (z - e^{i theta}) g = h in the truncated space via the tail-sum
// form g_n = e^{-i(n+1)theta} sum_{k>n} h_k e^{ik theta}. Equivalent to the
// forward recursion g_n = e^{-i theta}(g_{n-1} - h_n) when h vanishes at the
// boundary point, but with coefficient errors that decay in n. The residual
// equals |h(e^{i theta})| up to rounding; the call is flagged when that value
// exceeds tol (default: default_tolerance of the coefficient count).
DivisionResult divide_by_zeta(const HardyElement& h, double theta,
                              double tol = 0.0);

// Cross-check route: the forward recursion stated above.
HardyElement divide_by_zeta_forward(const HardyElement& h, double theta);

// Ambient coordinate packing. Analytic part degree-major (index n*d + j),
// fiber summand after it (index d*(N+1) + j).
Vector pack(const BrownianElement& v);
BrownianElement unpack(const Vector& v, const AmbientSpec& ambient);
Vector pack_hardy(const HardyElement& f);
HardyElement unpack_hardy(const Vector& v, int fiber_dim, int max_degree);

}  // namespace bshift
