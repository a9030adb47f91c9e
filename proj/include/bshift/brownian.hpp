#pragma once

#include <vector>

#include "bshift/hardy.hpp"
#include "bshift/linalg.hpp"
#include "bshift/types.hpp"

namespace bshift {

// Covariance, angle and truncation of a Brownian shift
// B = [S_E, sigma i_E; 0, e^{i theta} I_E] on H^2_E(T) + E.
struct BrownianParams {
  double sigma;
  double theta;
  AmbientSpec ambient;

  BrownianParams(double sigma_, double theta_, AmbientSpec ambient_);

  Complex boundary_point() const { return unit_circle(theta); }
};

// (f, x) -> (z f + sigma x, e^{i theta} x). The degree-N coefficient of f is
// dropped; apply_loss reports its magnitude.
BrownianElement apply(const BrownianParams& params, const BrownianElement& v);
double apply_loss(const BrownianParams& params, const BrownianElement& v);

// (f, x) -> (S^* f, sigma f_0 + e^{-i theta} x). Exact at truncation.
BrownianElement apply_adjoint(const BrownianParams& params,
                              const BrownianElement& v);

// Dense realization on the packed ambient coordinates.
OperatorMatrix as_matrix(const BrownianParams& params);

// Operator norm by dense SVD at truncation N, re-checked at 2N; stable when
// the two agree to 1e-6 relative.
struct OperatorNormResult {
  double value;
  double value_2n;
  bool stable;
};
OperatorNormResult operator_norm(const BrownianParams& params);

// |B^n (0, x)|^2 for n = 0..n_max via repeated application. Rejects
// n_max > N, where truncation would corrupt the growth law (1 + n sigma^2).
std::vector<double> power_growth(const BrownianParams& params, const Vector& x,
                                 int n_max);

// Normalized forward and adjoint power decay of v under B / |B|.
struct C00Report {
  double op_norm;
  std::vector<double> forward;  // |(B/|B|)^m v|
  std::vector<double> adjoint;  // |(B/|B|)^{*m} v|
};
C00Report c00_decay(const BrownianParams& params, const BrownianElement& v,
                    int m_max);

}  // namespace bshift
