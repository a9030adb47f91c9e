#include "bshift/hardy.hpp"

#include <cmath>
#include <stdexcept>

namespace bshift {

AmbientSpec::AmbientSpec(int d, int n) : fiber_dim(d), max_degree(n) {
  if (d < 1) throw std::invalid_argument("AmbientSpec: fiber_dim must be >= 1");
  if (n < 1) throw std::invalid_argument("AmbientSpec: max_degree must be >= 1");
}

HardyElement::HardyElement(int fiber_dim, int max_degree)
    : coeffs_(Matrix::Zero(fiber_dim, max_degree + 1)) {
  if (fiber_dim < 1 || max_degree < 0)
    throw std::invalid_argument("HardyElement: bad dimensions");
}

HardyElement::HardyElement(Matrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1)
    throw std::invalid_argument("HardyElement: empty coefficient array");
}

int HardyElement::support_degree(double tol) const {
  for (int n = max_degree(); n >= 0; --n) {
    if (coeffs_.col(n).norm() > tol) return n;
  }
  return -1;
}

Vector HardyElement::evaluate(Complex w) const {
  Vector acc = coeffs_.col(max_degree());
  for (int n = max_degree() - 1; n >= 0; --n) {
    acc = w * acc + coeffs_.col(n);
  }
  return acc;
}

HardyElement& HardyElement::operator+=(const HardyElement& rhs) {
  coeffs_ += rhs.coeffs_;
  return *this;
}

HardyElement& HardyElement::operator-=(const HardyElement& rhs) {
  coeffs_ -= rhs.coeffs_;
  return *this;
}

HardyElement& HardyElement::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

BrownianElement::BrownianElement(HardyElement f, Vector x)
    : analytic(std::move(f)), fiber(std::move(x)) {
  if (analytic.fiber_dim() != fiber.size())
    throw std::invalid_argument("BrownianElement: fiber dimension mismatch");
}

BrownianElement BrownianElement::zero(const AmbientSpec& ambient) {
  return BrownianElement(HardyElement(ambient.fiber_dim, ambient.max_degree),
                         Vector::Zero(ambient.fiber_dim));
}

double BrownianElement::norm() const { return std::sqrt(squared_norm()); }

HardyElement shift(const HardyElement& f) {
  const int n = f.max_degree();
  Matrix out = Matrix::Zero(f.fiber_dim(), n + 1);
  out.rightCols(n) = f.coeffs().leftCols(n);
  return HardyElement(std::move(out));
}

double shift_loss(const HardyElement& f) {
  return f.coeffs().col(f.max_degree()).norm();
}

HardyElement shift_adjoint(const HardyElement& f) {
  const int n = f.max_degree();
  Matrix out = Matrix::Zero(f.fiber_dim(), n + 1);
  out.leftCols(n) = f.coeffs().rightCols(n);
  return HardyElement(std::move(out));
}

HardyElement include_fiber(const Vector& x, int max_degree) {
  HardyElement out(static_cast<int>(x.size()), max_degree);
  out.coeffs().col(0) = x;
  return out;
}

Vector include_fiber_adjoint(const HardyElement& f) { return f.coeff(0); }

Complex inner_product(const HardyElement& a, const HardyElement& b) {
  if (a.fiber_dim() != b.fiber_dim() || a.max_degree() != b.max_degree())
    throw std::invalid_argument("inner_product: dimension mismatch");
  return (a.coeffs().array() * b.coeffs().array().conjugate()).sum();
}

Complex inner_product(const BrownianElement& a, const BrownianElement& b) {
  return inner_product(a.analytic, b.analytic) +
         (a.fiber.array() * b.fiber.array().conjugate()).sum();
}

DivisionResult divide_by_zeta(const HardyElement& h, double theta,
                              double tol) {
  const int n_max = h.max_degree();
  const int d = h.fiber_dim();
  const Complex w = unit_circle(theta);
  const Complex w_conj = std::conj(w);

  // Suffix sums S_n = sum_{k>n} h_k e^{ik theta}, one backward pass.
  Matrix quotient = Matrix::Zero(d, n_max + 1);
  Vector suffix = Vector::Zero(d);
  Complex w_pow = std::pow(w, n_max);  // e^{i n theta} running down from N
  for (int n = n_max - 1; n >= 0; --n) {
    suffix += w_pow * h.coeff(n + 1);
    w_pow *= w_conj;
    // here w_pow = e^{i(n) theta}; g_n = e^{-i(n+1) theta} S_n
    quotient.col(n) = std::conj(w_pow * w) * suffix;
  }
  HardyElement g(std::move(quotient));

  // Residual measured directly: truncate((z-w)g) - h.
  HardyElement check = shift(g);
  check -= HardyElement(Matrix(w * g.coeffs()));
  check -= h;
  const double residual = check.norm();

  const double boundary = h.evaluate(w).norm();
  const double eff_tol = resolve_tolerance(tol, d * (n_max + 1));
  return DivisionResult{std::move(g), residual, boundary,
                        boundary > eff_tol};
}

HardyElement divide_by_zeta_forward(const HardyElement& h, double theta) {
  const int n_max = h.max_degree();
  const int d = h.fiber_dim();
  const Complex w_conj = std::conj(unit_circle(theta));
  Matrix out = Matrix::Zero(d, n_max + 1);
  out.col(0) = -w_conj * h.coeff(0);
  for (int n = 1; n < n_max; ++n) {
    out.col(n) = w_conj * (out.col(n - 1) - h.coeff(n));
  }
  // degree N stays zero: a degree-N numerator has a degree-(N-1) quotient
  return HardyElement(std::move(out));
}

Vector pack(const BrownianElement& v) {
  const int d = v.analytic.fiber_dim();
  const int n = v.analytic.max_degree();
  Vector out(d * (n + 1) + d);
  for (int k = 0; k <= n; ++k) out.segment(k * d, d) = v.analytic.coeff(k);
  out.tail(d) = v.fiber;
  return out;
}

BrownianElement unpack(const Vector& v, const AmbientSpec& ambient) {
  const int d = ambient.fiber_dim;
  const int n = ambient.max_degree;
  if (v.size() != ambient.total_dim())
    throw std::invalid_argument("unpack: coordinate size mismatch");
  Matrix coeffs(d, n + 1);
  for (int k = 0; k <= n; ++k) coeffs.col(k) = v.segment(k * d, d);
  return BrownianElement(HardyElement(std::move(coeffs)), v.tail(d));
}

Vector pack_hardy(const HardyElement& f) {
  const int d = f.fiber_dim();
  const int n = f.max_degree();
  Vector out(d * (n + 1));
  for (int k = 0; k <= n; ++k) out.segment(k * d, d) = f.coeff(k);
  return out;
}

HardyElement unpack_hardy(const Vector& v, int fiber_dim, int max_degree) {
  if (v.size() != fiber_dim * (max_degree + 1))
    throw std::invalid_argument("unpack_hardy: coordinate size mismatch");
  Matrix coeffs(fiber_dim, max_degree + 1);
  for (int k = 0; k <= max_degree; ++k)
    coeffs.col(k) = v.segment(k * fiber_dim, fiber_dim);
  return HardyElement(std::move(coeffs));
}

}  // namespace bshift
