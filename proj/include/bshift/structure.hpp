#pragma once

#include <cstdint>

#include "bshift/subspace.hpp"

namespace bshift {

// A closed subspace G of the fiber E, by an orthonormal basis of C^d.
struct ReducingCandidate {
  Matrix g_basis;  // d x r, orthonormal columns (r = 0 means the zero space)
};

// H^2_G(T) + G at truncation: columns {0 + g_j} first, then {z^n g_j + 0}
// in degree order up to N-1.
SubspaceBasis build_reducing(const ReducingCandidate& g,
                             const AmbientSpec& ambient);

struct ReducingReport {
  double fwd_residual;
  double adj_residual;
  double tolerance;
  bool reducing;
};

// Residuals of B and B^* against the span. Forward residuals respect the
// basis's shift-safe marking; adjoint application is exact everywhere.
ReducingReport verify_reducing(const SubspaceBasis& m,
                               const BrownianParams& params, double tol = 0.0);

// Span of all fiber components and analytic coefficient vectors of the
// basis columns: for a reducing subspace this recovers G.
Matrix extract_reducing_fiber_span(const SubspaceBasis& m);

// Scalar case: the product characterization leaves only the two trivial
// candidates G = {0} and G = C; the scan confirms that and probes random
// subspaces for reducing residuals.
struct IrreducibilityReport {
  int trials;
  int nontrivial_reducing_found;
  double min_residual_observed;  // worst case over trials of max(fwd, adj)
};
IrreducibilityReport irreducibility_scan(const BrownianParams& params,
                                         int trials, std::uint64_t seed,
                                         double tol = 0.0);

}  // namespace bshift
