#pragma once

#include <string>

#include "bshift/hardy.hpp"
#include "bshift/tolerance.hpp"
#include "bshift/types.hpp"

namespace bshift {

// Coordinate layout of one side of a dense operator: a truncated Hardy block
// (degree-major, fiber-minor) optionally followed by the E summand.
struct BasisLayout {
  int fiber_dim;
  int max_degree;
  bool fiber_summand;

  int hardy_dim() const { return fiber_dim * (max_degree + 1); }
  int dim() const { return hardy_dim() + (fiber_summand ? fiber_dim : 0); }
  int hardy_index(int degree, int j) const { return degree * fiber_dim + j; }
  int fiber_index(int j) const { return hardy_dim() + j; }
};

// Dense complex matrix with basis metadata. exact_degree is the largest
// input degree on which the matrix action agrees with the untruncated
// operator.
struct OperatorMatrix {
  Matrix entries;
  BasisLayout row_basis;
  BasisLayout col_basis;
  int exact_degree;
};

// Two-pass modified Gram-Schmidt, order preserving: output column i spans
// only input columns 0..i. Throws when a column drops below drop_tol of its
// original norm unless allow_drop, in which case it is removed.
Matrix mgs_orthonormalize(const Matrix& cols, double drop_tol = 1e-10,
                          bool allow_drop = false);

// Rank-revealing orthonormal basis of the column span (SVD based, with the
// ambiguity guard from tolerance.hpp).
Matrix orthonormal_range(const Matrix& a);

// Orthonormal basis, in the coordinates of a k-column orthonormal frame, of
// the orthogonal complement of span(inner_coords) inside C^k.
Matrix complement_coords(int k, const Matrix& inner_coords);

// Principal angles (radians, ascending) between the spans of two orthonormal
// column collections.
RealVector principal_angles(const Matrix& q1, const Matrix& q2);

// Largest principal angle; requires equal dimensions for a meaningful
// subspace-equality test, and returns pi/2 on dimension mismatch.
double max_principal_angle(const Matrix& q1, const Matrix& q2);

// |(I - Q Q^*) v| for an orthonormal Q.
double projection_residual(const Matrix& q, const Vector& v);

// Largest singular value.
double spectral_norm(const Matrix& a);

}  // namespace bshift
