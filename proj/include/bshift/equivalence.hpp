#pragma once

#include <optional>
#include <string>

#include "bshift/subspace.hpp"

namespace bshift {

enum class VerdictReason {
  type_mismatch,
  dim_mismatch,
  theta_mismatch,
  scalar_criterion_failed,
  compatibility_failed,
  certified
};
const char* to_string(VerdictReason r);

struct EquivalenceVerdict {
  bool equivalent;
  VerdictReason reason;
  std::optional<Matrix> intertwiner;  // ambient partial isometry M1 -> M2
  std::optional<double> residual;     // intertwining residual, exact regime
  std::string detail;
};

// Type I restrictions are equivalent exactly when the multiplicities
// (wandering subspace dimensions) agree. When they do, the intertwiner maps
// Phi_1 z^n e_j to Phi_2 z^n e_j over a common degree budget.
EquivalenceVerdict decide_type1(const InnerSpec& phi1,
                                const BrownianParams& p1,
                                const InnerSpec& phi2,
                                const BrownianParams& p2, double tol = 0.0);

// Scalar canonical Type II subspaces built from inner psi_j: equivalent
// exactly when theta_1 = theta_2 and
// sigma_2^2 (1 + |g_1|^2) = sigma_1^2 (1 + |g_2|^2), with
// g_j = sigma_j (conj(psi_j(e^{i theta})) psi_j - 1)/(z - e^{i theta}).
EquivalenceVerdict decide_scalar_type2(const BrownianParams& p1,
                                       const BrownianParams& p2,
                                       const InnerSpec& psi1,
                                       const InnerSpec& psi2,
                                       double criterion_rel_tol = 1e-6,
                                       double tol = 0.0);

// The canonical scalar G_Phi generator sigma conj(psi(w)) of the parameter
// line, i.e. x with y = 1.
Vector scalar_canonical_parameter(const InnerSpec& psi,
                                  const BrownianParams& params);

// Certifies a supplied pair of unitaries (U_G on defect coordinates, U_E on
// parameter spaces) for canonical Type II data: checks unitarity, the
// compatibility condition U_E x_1' = x_2' on every defect basis element,
// assembles the full intertwiner and reports its residual.
EquivalenceVerdict certify_type2(const Type2Construction& m1,
                                 const InnerSpec& spec1,
                                 const BrownianParams& p1,
                                 const Type2Construction& m2,
                                 const InnerSpec& spec2,
                                 const BrownianParams& p2, const Matrix& ug,
                                 const Matrix& ue, double tol = 0.0);

// Restricted-norm separation between a Type I and a Type II invariant
// subspace: the Type I restriction has norm 1, the Type II restriction has
// norm at least sqrt(1 + sigma^2 mu) with mu the least fiber mass among unit
// defect vectors.
struct NormSeparationReport {
  SubspaceClass class1;
  SubspaceClass class2;
  double norm1;
  double norm2;
  double type1_deviation;    // |restricted norm - 1| on the Type I side
  double type2_lower_bound;  // sqrt(1 + sigma^2 mu) on the Type II side
  bool cross_type;           // exactly one side of each type
  bool separated;            // cross_type and both norm facts confirmed
};
NormSeparationReport norm_separation(const SubspaceBasis& m1,
                                     const BrownianParams& p1,
                                     const SubspaceBasis& m2,
                                     const BrownianParams& p2,
                                     double tol = 0.0);

// Norm of the compression Q^* B Q.
double restricted_norm(const SubspaceBasis& m, const BrownianParams& params);

}  // namespace bshift
