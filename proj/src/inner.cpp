#include "bshift/inner.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bshift {

namespace {

void check_projection(const Matrix& p, double tol) {
  if (p.rows() != p.cols())
    throw std::invalid_argument("BlaschkeFactor: projection must be square");
  if ((p - p.adjoint()).norm() > tol * std::max(1.0, p.norm()))
    throw std::invalid_argument("BlaschkeFactor: projection not Hermitian");
  if ((p * p - p).norm() > tol * std::max(1.0, p.norm()))
    throw std::invalid_argument("BlaschkeFactor: projection not idempotent");
}

Complex blaschke_value(Complex a, Complex w) {
  return (w - a) / (1.0 - std::conj(a) * w);
}

}  // namespace

InnerSpec::InnerSpec(Matrix constant_factor,
                     std::vector<BlaschkeFactor> factors, double validation_tol)
    : constant_factor_(std::move(constant_factor)),
      factors_(std::move(factors)) {
  const int d = codomain_dim();
  const int d2 = domain_dim();
  if (d < 1 || d2 < 1 || d2 > d)
    throw std::invalid_argument("InnerSpec: bad dimensions");
  Matrix gram = constant_factor_.adjoint() * constant_factor_;
  if ((gram - Matrix::Identity(d2, d2)).norm() > validation_tol)
    throw std::invalid_argument("InnerSpec: constant factor not an isometry");
  for (auto& f : factors_) {
    if (std::abs(f.zero) >= 1.0)
      throw std::invalid_argument("InnerSpec: factor zero must lie in the disc");
    if (f.projection.rows() != d)
      throw std::invalid_argument("InnerSpec: projection dimension mismatch");
    check_projection(f.projection, validation_tol);
    f.full_projection =
        (f.projection - Matrix::Identity(d, d)).norm() <= validation_tol;
  }
}

InnerSpec InnerSpec::monomial(int power) {
  if (power < 0) throw std::invalid_argument("InnerSpec::monomial: power < 0");
  std::vector<BlaschkeFactor> factors(
      power, BlaschkeFactor{Complex(0.0, 0.0), Matrix::Identity(1, 1), true});
  return InnerSpec(Matrix::Identity(1, 1), std::move(factors));
}

InnerSpec InnerSpec::scalar_blaschke(const std::vector<Complex>& zeros) {
  std::vector<BlaschkeFactor> factors;
  factors.reserve(zeros.size());
  for (Complex a : zeros)
    factors.push_back(BlaschkeFactor{a, Matrix::Identity(1, 1), true});
  return InnerSpec(Matrix::Identity(1, 1), std::move(factors));
}

InnerSpec InnerSpec::constant(Matrix isometry) {
  return InnerSpec(std::move(isometry), {});
}

Matrix InnerSpec::evaluate(Complex w) const {
  if (std::abs(w) > 1.0 + 1e-12)
    throw std::invalid_argument("InnerSpec::evaluate: |w| > 1");
  const int d = codomain_dim();
  Matrix acc = constant_factor_;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    const Complex b = blaschke_value(it->zero, w);
    acc = acc + (b - 1.0) * (it->projection * acc);
    // == ((I - P) + b P) acc
    (void)d;
  }
  return acc;
}

TaylorTable::TaylorTable(std::vector<Matrix> coeffs, double tail_bound)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
  if (coeffs_.empty()) throw std::invalid_argument("TaylorTable: empty");
}

double TaylorTable::tail_norm_beyond(int m) const {
  double acc = 0.0;
  for (int n = std::max(0, m + 1); n <= max_degree(); ++n)
    acc += coeffs_[n].squaredNorm();
  return std::sqrt(acc) + tail_bound_;
}

int TaylorTable::numeric_degree(double tol) const {
  for (int n = max_degree(); n >= 0; --n)
    if (coeffs_[n].norm() > tol) return n;
  return -1;
}

HardyElement TaylorTable::apply(const HardyElement& f) const {
  if (f.fiber_dim() != domain_dim())
    throw std::invalid_argument("TaylorTable::apply: fiber dim mismatch");
  const int n_out = f.max_degree();
  Matrix out = Matrix::Zero(codomain_dim(), n_out + 1);
  const int table_deg = max_degree();
  for (int n = 0; n <= n_out; ++n) {
    for (int k = std::max(0, n - table_deg); k <= n; ++k) {
      out.col(n) += coeffs_[n - k] * f.coeff(k);
    }
  }
  return HardyElement(std::move(out));
}

HardyElement TaylorTable::apply(const Vector& x, int degree_shift,
                                int out_degree) const {
  if (x.size() != domain_dim())
    throw std::invalid_argument("TaylorTable::apply: vector dim mismatch");
  Matrix out = Matrix::Zero(codomain_dim(), out_degree + 1);
  for (int n = degree_shift; n <= out_degree; ++n) {
    const int k = n - degree_shift;
    if (k > max_degree()) break;
    out.col(n) = coeffs_[k] * x;
  }
  return HardyElement(std::move(out));
}

HardyElement TaylorTable::apply_adjoint(const HardyElement& f) const {
  if (f.fiber_dim() != codomain_dim())
    throw std::invalid_argument(
        "TaylorTable::apply_adjoint: fiber dim mismatch");
  const int n_out = f.max_degree();
  Matrix out = Matrix::Zero(domain_dim(), n_out + 1);
  for (int n = 0; n <= n_out; ++n) {
    for (int k = 0; n + k <= n_out && k <= max_degree(); ++k) {
      out.col(n) += coeffs_[k].adjoint() * f.coeff(n + k);
    }
  }
  return HardyElement(std::move(out));
}

TaylorTable taylor(const InnerSpec& spec, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("taylor: max_degree < 1");
  const int d = spec.codomain_dim();
  const std::size_t m = spec.factors().size();

  // start from the constant factor, then left-multiply factor series
  std::vector<Matrix> coeffs(max_degree + 1,
                             Matrix::Zero(d, spec.domain_dim()));
  coeffs[0] = spec.constant_factor();

  std::vector<Complex> b(max_degree + 1);
  for (auto it = spec.factors().rbegin(); it != spec.factors().rend(); ++it) {
    const Complex a = it->zero;
    const Complex a_conj = std::conj(a);
    const double one_minus = 1.0 - std::norm(a);
    b[0] = -a;
    Complex pow_acc(1.0, 0.0);
    for (int k = 1; k <= max_degree; ++k) {
      b[k] = one_minus * pow_acc;
      pow_acc *= a_conj;
    }
    // new_c[n] = (I-P) old_c[n] + P sum_k b_k old_c[n-k]
    std::vector<Matrix> next(max_degree + 1);
    for (int n = max_degree; n >= 0; --n) {
      Matrix s = b[0] * coeffs[n];
      for (int k = 1; k <= n; ++k) s += b[k] * coeffs[n - k];
      next[n] = coeffs[n] - it->projection * coeffs[n] + it->projection * s;
    }
    coeffs.swap(next);
  }

  return TaylorTable(std::move(coeffs), coefficient_tail_bound(spec, max_degree));
}

double coefficient_tail_bound(const InnerSpec& spec, int beyond_degree) {
  const std::size_t m = spec.factors().size();
  if (m == 0) return 0.0;
  double rho = 0.0;
  for (const auto& f : spec.factors()) rho = std::max(rho, std::abs(f.zero));
  if (rho == 0.0)
    return beyond_degree >= static_cast<int>(m) ? 0.0 : 1.0;

  // Coefficient operator norms are bounded by the convolution of per-factor
  // absolute series (|c_0| <= 1, |c_k| = (1-|a|^2)|a|^{k-1}); compute that
  // envelope over a padded window and close it with a geometric remainder.
  const int window = beyond_degree + 192;
  std::vector<double> env(window + 1, 0.0);
  env[0] = 1.0;
  std::vector<double> fac(window + 1);
  for (const auto& f : spec.factors()) {
    const double a = std::abs(f.zero);
    fac[0] = f.full_projection ? a : 1.0;
    const double scale = 1.0 - a * a;
    double pow_acc = 1.0;
    for (int k = 1; k <= window; ++k) {
      fac[k] = scale * pow_acc;
      pow_acc *= a;
    }
    std::vector<double> next(window + 1, 0.0);
    for (int n = 0; n <= window; ++n) {
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += fac[k] * env[n - k];
      next[n] = s;
    }
    env.swap(next);
  }
  double tail = 0.0;
  for (int n = beyond_degree + 1; n <= window; ++n) tail += env[n];
  const double q = 0.5 * (1.0 + rho);
  tail += env[window] * q / (1.0 - q);
  return tail;
}

OperatorMatrix multiplication_matrix(const InnerSpec& spec,
                                     const AmbientSpec& ambient) {
  if (spec.codomain_dim() != ambient.fiber_dim)
    throw std::invalid_argument(
        "multiplication_matrix: codomain does not match ambient fiber");
  const int n_max = ambient.max_degree;
  const int d = spec.codomain_dim();
  const int d2 = spec.domain_dim();
  TaylorTable table = taylor(spec, n_max);

  BasisLayout rows{d, n_max, false};
  BasisLayout cols{d2, n_max, false};
  Matrix entries = Matrix::Zero(rows.dim(), cols.dim());
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      entries.block(n * d, k * d2, d, d2) = table.coeff(n - k);
    }
  }
  const int exact = n_max - std::max(0, table.numeric_degree(1e-13));
  return OperatorMatrix{std::move(entries), rows, cols, std::max(-1, exact)};
}

HardyElement model_space_projection(const TaylorTable& table,
                                    const HardyElement& f) {
  HardyElement out = f;
  out -= table.apply(table.apply_adjoint(f));
  return out;
}

HardyElement model_space_projection(const InnerSpec& spec,
                                    const HardyElement& f) {
  return model_space_projection(taylor(spec, f.max_degree()), f);
}

}  // namespace bshift
