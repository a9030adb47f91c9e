#pragma once

#include <string>
#include <vector>

#include "bshift/brownian.hpp"
#include "bshift/inner.hpp"
#include "bshift/linalg.hpp"

namespace bshift {

// Orthonormal basis of a subspace of the truncated ambient space, in packed
// coordinates. No nonzero finite-dimensional subspace of the analytic part
// is exactly shift-invariant (the shift raises degree), so a built basis
// marks how many of its leading columns have their one-step image inside the
// span; one-step residuals are meaningful only for those.
struct SubspaceBasis {
  Matrix columns;  // total_dim x k
  AmbientSpec ambient;
  int exactness_margin;      // max analytic support degree among columns
  int shift_safe_count;      // leading testable columns; -1 means all
  std::string label;

  int dim() const { return static_cast<int>(columns.cols()); }
  Matrix fiber_block() const {
    return columns.bottomRows(ambient.fiber_dim);
  }
  double gram_defect() const;
};

// Computes the exactness margin from the columns.
SubspaceBasis make_subspace_basis(Matrix columns, const AmbientSpec& ambient,
                                  std::string label,
                                  int shift_safe_count = -1);

// A member (g, y) of G_Phi together with its parameter x, satisfying
// (z - e^{i theta}) g = Phi x - sigma y with |x| = sigma |y| and g in the
// model space of Phi.
struct GPhiElement {
  HardyElement g;
  Vector y;
  Vector x;
  double build_residual;
  bool flagged;
};

// Orthonormal basis of Phi H^2_{E2} + {0} up to the degree budget the
// truncation supports.
SubspaceBasis build_type1(const InnerSpec& spec, const AmbientSpec& ambient,
                          double tol = 0.0);

// Inverts the boundary identity Phi(e^{i theta}) x = sigma y and divides:
// y = Phi(e^{i theta}) x / sigma, g = (Phi x - sigma y)/(z - e^{i theta}).
// Linear in x; x = 0 gives the zero element.
GPhiElement build_gphi_element(const InnerSpec& spec,
                               const BrownianParams& params, const Vector& x,
                               double tol = 0.0);

// <G> + (Phi H^2_{E2} + {0}) for G spanned by the elements of a parameter
// subspace X. Keeps the two blocks separate: defect columns first, then the
// Type I block in degree order.
struct Type2Construction {
  SubspaceBasis basis;
  SubspaceBasis defect_block;
  SubspaceBasis type1_block;
  std::vector<GPhiElement> elements;  // one per orthonormal defect column
};
Type2Construction build_type2(const InnerSpec& spec,
                              const BrownianParams& params,
                              const Matrix& parameter_space, double tol = 0.0);

struct InvarianceReport {
  double max_residual;  // over tested columns
  std::vector<double> per_column;
  std::vector<bool> tested;
  double tolerance;
  bool invariant;
};
InvarianceReport verify_invariance(const SubspaceBasis& m,
                                   const BrownianParams& params,
                                   double tol = 0.0);

enum class SubspaceClass { TypeI, TypeII, NotInvariant };
const char* to_string(SubspaceClass c);

SubspaceClass classify(const SubspaceBasis& m, const BrownianParams& params,
                       double tol = 0.0);

// x = M_Phi^*((z - e^{i theta}) g + sigma y); valid because the right-hand
// side equals Phi x exactly and M_Phi is an isometry.
struct XRecovery {
  Vector x;
  double identity_residual;  // |Phi x - ((z-w) g + sigma y)|
  double higher_order;       // mass of M_Phi^*(...) beyond degree zero
};
XRecovery recover_parameter(const TaylorTable& table,
                            const BrownianParams& params,
                            const HardyElement& g, const Vector& y);

// Splits a verified-invariant M into M0 = M /\ (H^2 + {0}) and the defect
// space M - M0 by singular value thresholding of the fiber-coordinate map.
// When Phi for M0 is supplied, recovers the x parameter of every defect
// column and the residual of the defining identity.
struct CanonicalDecomposition {
  SubspaceBasis m0;
  SubspaceBasis defect;
  std::vector<GPhiElement> elements;
};
CanonicalDecomposition canonical_decomposition(const SubspaceBasis& m,
                                               const BrownianParams& params,
                                               const InnerSpec* spec = nullptr,
                                               double tol = 0.0);

// W = M0 - shift(M0), the wandering subspace; its dimension is the Beurling
// multiplicity and its columns realize Phi's columns numerically.
SubspaceBasis wandering_subspace(const SubspaceBasis& m0,
                                 const AmbientSpec& ambient, double tol = 0.0);

}  // namespace bshift
