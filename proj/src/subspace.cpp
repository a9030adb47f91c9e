#include "bshift/subspace.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

namespace bshift {

namespace {

constexpr double kSupportThreshold = 1e-13;

int margin_of_columns(const Matrix& columns, const AmbientSpec& ambient) {
  const int d = ambient.fiber_dim;
  int margin = -1;
  for (int n = ambient.max_degree; n >= 0; --n) {
    if (columns.middleRows(n * d, d).norm() > kSupportThreshold) {
      margin = n;
      break;
    }
  }
  return margin;
}

Vector pack_analytic_only(const HardyElement& f, const AmbientSpec& ambient) {
  return pack(BrownianElement(f, Vector::Zero(ambient.fiber_dim)));
}

}  // namespace

double SubspaceBasis::gram_defect() const {
  if (dim() == 0) return 0.0;
  Matrix gram = columns.adjoint() * columns;
  return (gram - Matrix::Identity(dim(), dim())).norm();
}

SubspaceBasis make_subspace_basis(Matrix columns, const AmbientSpec& ambient,
                                  std::string label, int shift_safe_count) {
  if (columns.rows() != ambient.total_dim())
    throw std::invalid_argument("make_subspace_basis: row count mismatch");
  const int margin = margin_of_columns(columns, ambient);
  return SubspaceBasis{std::move(columns), ambient, margin, shift_safe_count,
                       std::move(label)};
}

SubspaceBasis build_type1(const InnerSpec& spec, const AmbientSpec& ambient,
                          double tol) {
  if (spec.codomain_dim() != ambient.fiber_dim)
    throw std::invalid_argument("build_type1: codomain/ambient mismatch");
  const int n_max = ambient.max_degree;
  const int d2 = spec.domain_dim();
  const double eff_tol = resolve_tolerance(tol, ambient.total_dim());

  TaylorTable table = taylor(spec, n_max);

  // Degree budget: a column emitted at degree s carries Phi's coefficient
  // mass beyond degree N-1-s, which gets dropped; keep that far below the
  // working tolerance. Support is capped at N-1 so one shift application
  // stays representable.
  const double budget_tol = std::min(eff_tol / 16.0, 1e-9);
  int top = -1;
  for (int s = 0; s <= n_max - 1; ++s) {
    if (table.tail_norm_beyond(n_max - 1 - s) <= budget_tol)
      top = s;
    else
      break;
  }
  if (top < 1)
    throw std::invalid_argument(
        "build_type1: max_degree too small for this inner function");

  Matrix cols(ambient.total_dim(), (top + 1) * d2);
  int idx = 0;
  for (int s = 0; s <= top; ++s) {
    for (int j = 0; j < d2; ++j) {
      Vector e = Vector::Zero(d2);
      e(j) = 1.0;
      HardyElement column = table.apply(e, s, n_max);
      column.coeffs().col(n_max).setZero();  // mass <= budget_tol by choice of top
      cols.col(idx++) = pack_analytic_only(column, ambient);
    }
  }
  Matrix q = mgs_orthonormalize(cols, 1e-6);
  return make_subspace_basis(std::move(q), ambient,
                             "type1[deg<=" + std::to_string(top) + "]",
                             top * d2);
}

GPhiElement build_gphi_element(const InnerSpec& spec,
                               const BrownianParams& params, const Vector& x,
                               double tol) {
  if (spec.codomain_dim() != params.ambient.fiber_dim)
    throw std::invalid_argument("build_gphi_element: codomain mismatch");
  if (x.size() != spec.domain_dim())
    throw std::invalid_argument("build_gphi_element: parameter size mismatch");
  const int n_max = params.ambient.max_degree;
  const double eff_tol = resolve_tolerance(tol, params.ambient.total_dim());

  const Complex w = params.boundary_point();
  const Vector y = (spec.evaluate(w) * x) / params.sigma;

  TaylorTable table = taylor(spec, n_max);
  HardyElement numerator = table.apply(x, 0, n_max);
  numerator.coeffs().col(0) -= params.sigma * y;

  DivisionResult div = divide_by_zeta(numerator, params.theta, eff_tol);
  const bool flagged = div.residual > eff_tol || div.flagged;
  return GPhiElement{std::move(div.quotient), y, x, div.residual, flagged};
}

Type2Construction build_type2(const InnerSpec& spec,
                              const BrownianParams& params,
                              const Matrix& parameter_space, double tol) {
  if (parameter_space.cols() < 1 || parameter_space.norm() == 0.0)
    throw std::invalid_argument("build_type2: parameter space must be nonzero");
  if (parameter_space.rows() != spec.domain_dim())
    throw std::invalid_argument("build_type2: parameter space dimension");
  const AmbientSpec& ambient = params.ambient;
  const double eff_tol = resolve_tolerance(tol, ambient.total_dim());

  Matrix x_basis = mgs_orthonormalize(parameter_space, 1e-10, true);
  const int r = static_cast<int>(x_basis.cols());

  Matrix raw(ambient.total_dim(), r);
  for (int i = 0; i < r; ++i) {
    GPhiElement e = build_gphi_element(spec, params, x_basis.col(i), tol);
    if (e.flagged)
      throw std::invalid_argument(
          "build_type2: division residual above tolerance; increase N");
    raw.col(i) = pack(BrownianElement(e.g, e.y));
  }
  // Near-parallel defect vectors arise when sigma is small; MGS runs two
  // passes, so the orthonormalized columns stay faithful combinations.
  Matrix defect_q = mgs_orthonormalize(raw, 1e-10);

  SubspaceBasis type1 = build_type1(spec, ambient, tol);

  TaylorTable table = taylor(spec, ambient.max_degree);
  std::vector<GPhiElement> elements;
  elements.reserve(r);
  for (int i = 0; i < r; ++i) {
    BrownianElement v = unpack(defect_q.col(i), ambient);
    XRecovery rec = recover_parameter(table, params, v.analytic, v.fiber);
    elements.push_back(GPhiElement{v.analytic, v.fiber, rec.x,
                                   rec.identity_residual,
                                   rec.identity_residual > eff_tol});
  }

  Matrix combined(ambient.total_dim(), r + type1.dim());
  combined.leftCols(r) = defect_q;
  combined.rightCols(type1.dim()) = type1.columns;

  Type2Construction out{
      make_subspace_basis(combined, ambient, "type2",
                          r + type1.shift_safe_count),
      make_subspace_basis(defect_q, ambient, "type2.defect"),
      std::move(type1), std::move(elements)};
  out.type1_block.label = "type2.m0";
  return out;
}

InvarianceReport verify_invariance(const SubspaceBasis& m,
                                   const BrownianParams& params,
                                   double tol) {
  if (!(m.ambient == params.ambient))
    throw std::invalid_argument("verify_invariance: ambient mismatch");
  if (m.exactness_margin > m.ambient.max_degree - 1)
    throw std::invalid_argument(
        "verify_invariance: basis reaches the truncation boundary");
  const double eff_tol = resolve_tolerance(tol, m.ambient.total_dim());

  InvarianceReport report;
  report.tolerance = eff_tol;
  report.max_residual = 0.0;
  const int k = m.dim();
  report.per_column.resize(k);
  report.tested.resize(k);
  for (int i = 0; i < k; ++i) {
    BrownianElement v = unpack(m.columns.col(i), m.ambient);
    const Vector image = pack(apply(params, v));
    report.per_column[i] = projection_residual(m.columns, image);
    report.tested[i] = m.shift_safe_count < 0 || i < m.shift_safe_count;
    if (report.tested[i])
      report.max_residual = std::max(report.max_residual,
                                     report.per_column[i]);
  }
  report.invariant = report.max_residual < eff_tol;
  return report;
}

const char* to_string(SubspaceClass c) {
  switch (c) {
    case SubspaceClass::TypeI:
      return "type1";
    case SubspaceClass::TypeII:
      return "type2";
    default:
      return "not_invariant";
  }
}

SubspaceClass classify(const SubspaceBasis& m, const BrownianParams& params,
                       double tol) {
  InvarianceReport report = verify_invariance(m, params, tol);
  if (!report.invariant) return SubspaceClass::NotInvariant;
  const double eff_tol = resolve_tolerance(tol, m.ambient.total_dim());
  const double fiber_mass = m.fiber_block().colwise().norm().maxCoeff();
  return fiber_mass < eff_tol ? SubspaceClass::TypeI : SubspaceClass::TypeII;
}

XRecovery recover_parameter(const TaylorTable& table,
                            const BrownianParams& params,
                            const HardyElement& g, const Vector& y) {
  const Complex w = params.boundary_point();
  HardyElement rhs = shift(g);
  rhs -= HardyElement(Matrix(w * g.coeffs()));
  rhs.coeffs().col(0) += params.sigma * y;

  HardyElement pulled = table.apply_adjoint(rhs);
  Vector x = pulled.coeff(0);
  const double higher =
      std::sqrt(std::max(0.0, pulled.squared_norm() - x.squaredNorm()));

  HardyElement reconstruction = table.apply(x, 0, g.max_degree());
  reconstruction -= rhs;
  return XRecovery{std::move(x), reconstruction.norm(), higher};
}

CanonicalDecomposition canonical_decomposition(const SubspaceBasis& m,
                                               const BrownianParams& params,
                                               const InnerSpec* spec,
                                               double tol) {
  if (m.dim() == 0)
    throw std::invalid_argument("canonical_decomposition: zero subspace");
  const AmbientSpec& ambient = m.ambient;
  const double eff_tol = resolve_tolerance(tol, ambient.total_dim());
  const int k = m.dim();

  Matrix fiber = m.fiber_block();
  int rank = 0;
  Matrix v_frame = Matrix::Identity(k, k);
  if (fiber.norm() > kSupportThreshold) {
    Eigen::JacobiSVD<Matrix> svd(fiber, Eigen::ComputeFullV);
    rank = rank_by_threshold(svd.singularValues());
    v_frame = svd.matrixV();
  }

  CanonicalDecomposition out{
      make_subspace_basis(Matrix(m.columns * v_frame.rightCols(k - rank)),
                          ambient, m.label + ".m0"),
      make_subspace_basis(Matrix(m.columns * v_frame.leftCols(rank)), ambient,
                          m.label + ".defect"),
      {}};

  if (rank > 0 && out.m0.dim() == 0)
    throw std::invalid_argument(
        "canonical_decomposition: defect without Type I part; input is not "
        "an invariant subspace at this truncation");

  if (spec != nullptr && rank > 0) {
    TaylorTable table = taylor(*spec, ambient.max_degree);
    for (int i = 0; i < rank; ++i) {
      BrownianElement v = unpack(out.defect.columns.col(i), ambient);
      XRecovery rec = recover_parameter(table, params, v.analytic, v.fiber);
      out.elements.push_back(GPhiElement{v.analytic, v.fiber, rec.x,
                                         rec.identity_residual,
                                         rec.identity_residual > eff_tol});
    }
  }
  return out;
}

SubspaceBasis wandering_subspace(const SubspaceBasis& m0,
                                 const AmbientSpec& ambient, double tol) {
  const double eff_tol = resolve_tolerance(tol, ambient.total_dim());
  const int k = m0.dim();
  if (k == 0)
    return make_subspace_basis(Matrix(ambient.total_dim(), 0), ambient,
                               m0.label + ".wandering");
  if (m0.fiber_block().norm() > eff_tol)
    throw std::invalid_argument(
        "wandering_subspace: input has fiber components");

  Matrix shifted(ambient.total_dim(), k);
  for (int i = 0; i < k; ++i) {
    BrownianElement v = unpack(m0.columns.col(i), ambient);
    shifted.col(i) = pack_analytic_only(shift(v.analytic), ambient);
  }
  // Coordinates of the shifted span inside M0; what escapes the span is
  // truncation mass and is dropped by the rank threshold.
  Matrix coords = m0.columns.adjoint() * shifted;
  Matrix inner = orthonormal_range(coords);
  Matrix comp = complement_coords(k, inner);
  return make_subspace_basis(Matrix(m0.columns * comp), ambient,
                             m0.label + ".wandering");
}

}  // namespace bshift
