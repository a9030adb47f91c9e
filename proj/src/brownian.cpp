#include "bshift/brownian.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace bshift {

namespace {

double reduce_angle(double theta) {
  const double two_pi = 2.0 * M_PI;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  return t;
}

Matrix dense_matrix(double sigma, double theta, const AmbientSpec& ambient) {
  const int d = ambient.fiber_dim;
  const int n_max = ambient.max_degree;
  BasisLayout layout{d, n_max, true};
  Matrix entries = Matrix::Zero(layout.dim(), layout.dim());
  for (int n = 0; n < n_max; ++n) {
    entries.block((n + 1) * d, n * d, d, d) = Matrix::Identity(d, d);
  }
  entries.block(0, layout.fiber_index(0), d, d) =
      sigma * Matrix::Identity(d, d);
  entries.block(layout.fiber_index(0), layout.fiber_index(0), d, d) =
      unit_circle(theta) * Matrix::Identity(d, d);
  return entries;
}

}  // namespace

BrownianParams::BrownianParams(double sigma_, double theta_,
                               AmbientSpec ambient_)
    : sigma(sigma_), theta(reduce_angle(theta_)), ambient(ambient_) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("BrownianParams: sigma must be > 0");
}

BrownianElement apply(const BrownianParams& params, const BrownianElement& v) {
  HardyElement analytic = shift(v.analytic);
  analytic.coeffs().col(0) += params.sigma * v.fiber;
  return BrownianElement(std::move(analytic),
                         params.boundary_point() * v.fiber);
}

double apply_loss(const BrownianParams& params, const BrownianElement& v) {
  (void)params;
  return shift_loss(v.analytic);
}

BrownianElement apply_adjoint(const BrownianParams& params,
                              const BrownianElement& v) {
  return BrownianElement(
      shift_adjoint(v.analytic),
      params.sigma * v.analytic.coeff(0) +
          std::conj(params.boundary_point()) * v.fiber);
}

OperatorMatrix as_matrix(const BrownianParams& params) {
  BasisLayout layout{params.ambient.fiber_dim, params.ambient.max_degree,
                     true};
  return OperatorMatrix{
      dense_matrix(params.sigma, params.theta, params.ambient), layout, layout,
      params.ambient.max_degree - 1};
}

OperatorNormResult operator_norm(const BrownianParams& params) {
  const double at_n = spectral_norm(
      dense_matrix(params.sigma, params.theta, params.ambient));
  AmbientSpec doubled(params.ambient.fiber_dim, 2 * params.ambient.max_degree);
  const double at_2n =
      spectral_norm(dense_matrix(params.sigma, params.theta, doubled));
  const bool stable =
      std::abs(at_n - at_2n) <= 1e-6 * std::max(at_n, at_2n);
  return OperatorNormResult{at_n, at_2n, stable};
}

std::vector<double> power_growth(const BrownianParams& params, const Vector& x,
                                 int n_max) {
  if (n_max > params.ambient.max_degree)
    throw std::invalid_argument(
        "power_growth: n_max beyond truncation validity");
  if (x.size() != params.ambient.fiber_dim)
    throw std::invalid_argument("power_growth: fiber dimension mismatch");
  BrownianElement v(HardyElement(params.ambient.fiber_dim,
                                 params.ambient.max_degree),
                    x);
  std::vector<double> out;
  out.reserve(n_max + 1);
  out.push_back(v.squared_norm());
  for (int n = 1; n <= n_max; ++n) {
    v = apply(params, v);
    out.push_back(v.squared_norm());
  }
  return out;
}

C00Report c00_decay(const BrownianParams& params, const BrownianElement& v,
                    int m_max) {
  if (m_max > params.ambient.max_degree)
    throw std::invalid_argument("c00_decay: m_max beyond truncation validity");
  OperatorNormResult norm = operator_norm(params);
  const double b_norm = norm.value;

  C00Report report;
  report.op_norm = b_norm;
  report.forward.reserve(m_max + 1);
  report.adjoint.reserve(m_max + 1);

  BrownianElement fwd = v;
  BrownianElement adj = v;
  double scale = 1.0;
  report.forward.push_back(fwd.norm());
  report.adjoint.push_back(adj.norm());
  for (int m = 1; m <= m_max; ++m) {
    fwd = apply(params, fwd);
    adj = apply_adjoint(params, adj);
    scale *= b_norm;
    report.forward.push_back(fwd.norm() / scale);
    report.adjoint.push_back(adj.norm() / scale);
  }
  return report;
}

}  // namespace bshift
