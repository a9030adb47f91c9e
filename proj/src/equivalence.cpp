#include "bshift/equivalence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace bshift {

namespace {

// Max of |U B1 v - B2 U v| over the first `tested` columns of q1.
double intertwining_residual(const Matrix& u, const BrownianParams& p1,
                             const BrownianParams& p2, const Matrix& q1,
                             int tested) {
  double worst = 0.0;
  for (int i = 0; i < tested; ++i) {
    const Vector v = q1.col(i);
    const Vector lhs = u * pack(apply(p1, unpack(v, p1.ambient)));
    const Vector rhs = pack(apply(p2, unpack(Vector(u * v), p2.ambient)));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm() <=
         tol;
}

}  // namespace

const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::type_mismatch:
      return "type_mismatch";
    case VerdictReason::dim_mismatch:
      return "dim_mismatch";
    case VerdictReason::theta_mismatch:
      return "theta_mismatch";
    case VerdictReason::scalar_criterion_failed:
      return "scalar_criterion_failed";
    case VerdictReason::compatibility_failed:
      return "compatibility_failed";
    default:
      return "certified";
  }
}

EquivalenceVerdict decide_type1(const InnerSpec& phi1,
                                const BrownianParams& p1,
                                const InnerSpec& phi2,
                                const BrownianParams& p2, double tol) {
  SubspaceBasis b1 = build_type1(phi1, p1.ambient);
  SubspaceBasis b2 = build_type1(phi2, p2.ambient);

  const int mult1 = wandering_subspace(b1, p1.ambient).dim();
  const int mult2 = wandering_subspace(b2, p2.ambient).dim();
  if (mult1 != mult2) {
    std::ostringstream detail;
    detail << "multiplicities " << mult1 << " vs " << mult2;
    return EquivalenceVerdict{false, VerdictReason::dim_mismatch, std::nullopt,
                              std::nullopt, detail.str()};
  }

  // Common degree budget; the wandering bases are paired in construction
  // order (the theorem allows any unitary between them).
  const int d2 = phi1.domain_dim();
  const int top = std::min(b1.dim(), b2.dim()) / d2 - 1;
  const int common = (top + 1) * d2;
  Matrix q1 = b1.columns.leftCols(common);
  Matrix q2 = b2.columns.leftCols(common);
  Matrix u = q2 * q1.adjoint();

  const double residual =
      intertwining_residual(u, p1, p2, q1, top * d2);
  const double eff_tol = resolve_tolerance(tol, p1.ambient.total_dim());
  return EquivalenceVerdict{residual < eff_tol, VerdictReason::certified,
                            std::move(u), residual, ""};
}

Vector scalar_canonical_parameter(const InnerSpec& psi,
                                  const BrownianParams& params) {
  if (!psi.is_scalar())
    throw std::invalid_argument("scalar_canonical_parameter: non-scalar");
  Vector x(1);
  x(0) = params.sigma * std::conj(psi.evaluate(params.boundary_point())(0, 0));
  return x;
}

EquivalenceVerdict decide_scalar_type2(const BrownianParams& p1,
                                       const BrownianParams& p2,
                                       const InnerSpec& psi1,
                                       const InnerSpec& psi2,
                                       double criterion_rel_tol, double tol) {
  if (!psi1.is_scalar() || !psi2.is_scalar() || p1.ambient.fiber_dim != 1 ||
      p2.ambient.fiber_dim != 1)
    throw std::invalid_argument("decide_scalar_type2: scalar case only");
  if (!(p1.ambient == p2.ambient))
    throw std::invalid_argument("decide_scalar_type2: ambient mismatch");

  if (std::abs(p1.theta - p2.theta) > 1e-12) {
    return EquivalenceVerdict{false, VerdictReason::theta_mismatch,
                              std::nullopt, std::nullopt, ""};
  }

  GPhiElement e1 =
      build_gphi_element(psi1, p1, scalar_canonical_parameter(psi1, p1));
  GPhiElement e2 =
      build_gphi_element(psi2, p2, scalar_canonical_parameter(psi2, p2));
  const double g1_sq = e1.g.squared_norm();
  const double g2_sq = e2.g.squared_norm();

  const double lhs = p2.sigma * p2.sigma * (1.0 + g1_sq);
  const double rhs = p1.sigma * p1.sigma * (1.0 + g2_sq);
  std::ostringstream detail;
  detail << "sigma2^2(1+|g1|^2)=" << lhs << " vs sigma1^2(1+|g2|^2)=" << rhs;
  if (std::abs(lhs - rhs) > criterion_rel_tol * std::max(lhs, rhs)) {
    return EquivalenceVerdict{false, VerdictReason::scalar_criterion_failed,
                              std::nullopt, std::nullopt, detail.str()};
  }

  // U_G: [g1;1] -> (sigma1/sigma2)[g2;1], which in normalized defect
  // coordinates is the identity up to the criterion defect. U_E then has to
  // transport the recovered parameter of the paired defect columns.
  Type2Construction c1 = build_type2(psi1, p1, Matrix::Identity(1, 1));
  Type2Construction c2 = build_type2(psi2, p2, Matrix::Identity(1, 1));
  const Complex transport = c2.elements[0].x(0) / c1.elements[0].x(0);
  Matrix ue(1, 1);
  ue(0, 0) = transport / std::abs(transport);

  const int d2 = 1;
  const int top = std::min(c1.type1_block.dim(), c2.type1_block.dim()) - 1;
  const int common = (top + 1) * d2;
  const int k = 1 + common;
  Matrix q1(p1.ambient.total_dim(), k);
  q1.col(0) = c1.defect_block.columns.col(0);
  q1.rightCols(common) = c1.type1_block.columns.leftCols(common);
  Matrix q2(p2.ambient.total_dim(), k);
  q2.col(0) = c2.defect_block.columns.col(0);
  q2.rightCols(common) = c2.type1_block.columns.leftCols(common);

  Matrix coords = Matrix::Identity(k, k);
  coords.block(1, 1, common, common) *= ue(0, 0);
  Matrix u = q2 * coords * q1.adjoint();

  const double residual = intertwining_residual(u, p1, p2, q1, 1 + top * d2);
  const double eff_tol = resolve_tolerance(tol, p1.ambient.total_dim());
  return EquivalenceVerdict{residual < eff_tol, VerdictReason::certified,
                            std::move(u), residual, detail.str()};
}

EquivalenceVerdict certify_type2(const Type2Construction& m1,
                                 const InnerSpec& spec1,
                                 const BrownianParams& p1,
                                 const Type2Construction& m2,
                                 const InnerSpec& spec2,
                                 const BrownianParams& p2, const Matrix& ug,
                                 const Matrix& ue, double tol) {
  const double eff_tol = resolve_tolerance(tol, p1.ambient.total_dim());
  const int r = m1.defect_block.dim();
  if (m2.defect_block.dim() != r || ug.rows() != r || ug.cols() != r)
    throw std::invalid_argument("certify_type2: defect dimension mismatch");
  if (spec1.domain_dim() != spec2.domain_dim() ||
      ue.rows() != spec2.domain_dim() || ue.cols() != spec1.domain_dim())
    throw std::invalid_argument("certify_type2: parameter dimension mismatch");
  if (!is_unitary(ug, eff_tol) || !is_unitary(ue, eff_tol))
    throw std::invalid_argument("certify_type2: candidate not unitary");

  if (std::abs(p1.theta - p2.theta) > 1e-12)
    return EquivalenceVerdict{false, VerdictReason::theta_mismatch,
                              std::nullopt, std::nullopt, ""};

  // Compatibility: each defect element's parameter must transport through
  // U_E exactly as its (g, y) part transports through U_G.
  TaylorTable table2 = taylor(spec2, p2.ambient.max_degree);
  for (int j = 0; j < r; ++j) {
    const Vector image = m2.defect_block.columns * ug.col(j);
    BrownianElement v = unpack(image, p2.ambient);
    XRecovery rec = recover_parameter(table2, p2, v.analytic, v.fiber);
    const Vector expected = ue * m1.elements[j].x;
    const double defect = (expected - rec.x).norm();
    if (defect > eff_tol) {
      std::ostringstream detail;
      detail << "defect element " << j << ": |U_E x1' - x2'| = " << defect;
      return EquivalenceVerdict{false, VerdictReason::compatibility_failed,
                                std::nullopt, std::nullopt, detail.str()};
    }
  }

  const int d2 = spec1.domain_dim();
  const int top =
      std::min(m1.type1_block.dim(), m2.type1_block.dim()) / d2 - 1;
  const int common = (top + 1) * d2;
  const int k = r + common;
  Matrix q1(p1.ambient.total_dim(), k);
  q1.leftCols(r) = m1.defect_block.columns;
  q1.rightCols(common) = m1.type1_block.columns.leftCols(common);
  Matrix q2(p2.ambient.total_dim(), k);
  q2.leftCols(r) = m2.defect_block.columns;
  q2.rightCols(common) = m2.type1_block.columns.leftCols(common);

  Matrix coords = Matrix::Zero(k, k);
  coords.topLeftCorner(r, r) = ug;
  for (int s = 0; s <= top; ++s)
    coords.block(r + s * d2, r + s * d2, d2, d2) = ue;
  Matrix u = q2 * coords * q1.adjoint();

  const double residual =
      intertwining_residual(u, p1, p2, q1, r + top * d2);
  return EquivalenceVerdict{residual < eff_tol, VerdictReason::certified,
                            std::move(u), residual, ""};
}

double restricted_norm(const SubspaceBasis& m, const BrownianParams& params) {
  const int k = m.dim();
  if (k == 0) return 0.0;
  Matrix image(m.columns.rows(), k);
  for (int i = 0; i < k; ++i) {
    image.col(i) = pack(apply(params, unpack(m.columns.col(i), m.ambient)));
  }
  Matrix compressed = m.columns.adjoint() * image;
  return spectral_norm(compressed);
}

NormSeparationReport norm_separation(const SubspaceBasis& m1,
                                     const BrownianParams& p1,
                                     const SubspaceBasis& m2,
                                     const BrownianParams& p2, double tol) {
  const double eff_tol = resolve_tolerance(tol, p1.ambient.total_dim());
  NormSeparationReport report{};
  report.class1 = classify(m1, p1, tol);
  report.class2 = classify(m2, p2, tol);
  report.norm1 = restricted_norm(m1, p1);
  report.norm2 = restricted_norm(m2, p2);
  report.cross_type =
      (report.class1 == SubspaceClass::TypeI &&
       report.class2 == SubspaceClass::TypeII) ||
      (report.class1 == SubspaceClass::TypeII &&
       report.class2 == SubspaceClass::TypeI);
  report.type1_deviation = 0.0;
  report.type2_lower_bound = 0.0;
  if (!report.cross_type) {
    report.separated = false;
    return report;
  }

  const bool first_is_type1 = report.class1 == SubspaceClass::TypeI;
  const SubspaceBasis& type2 = first_is_type1 ? m2 : m1;
  const BrownianParams& type2_params = first_is_type1 ? p2 : p1;
  const double type1_norm = first_is_type1 ? report.norm1 : report.norm2;
  const double type2_norm = first_is_type1 ? report.norm2 : report.norm1;

  report.type1_deviation = std::abs(type1_norm - 1.0);

  CanonicalDecomposition decomp =
      canonical_decomposition(type2, type2_params, nullptr, tol);
  Eigen::JacobiSVD<Matrix> svd(decomp.defect.fiber_block());
  const double sigma_min =
      svd.singularValues()(svd.singularValues().size() - 1);
  const double mu = sigma_min * sigma_min;
  report.type2_lower_bound =
      std::sqrt(1.0 + type2_params.sigma * type2_params.sigma * mu);

  report.separated = report.type1_deviation <= eff_tol &&
                     type2_norm >= report.type2_lower_bound - eff_tol;
  return report;
}

}  // namespace bshift
