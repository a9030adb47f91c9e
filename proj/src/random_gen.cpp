#include "bshift/random_gen.hpp"

#include <cmath>

#include <Eigen/QR>

namespace bshift {

Matrix random_gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian();
  return m;
}

Vector random_vector(Rng& rng, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v;
}

Matrix random_isometry(Rng& rng, int rows, int cols) {
  Matrix g = random_gaussian_matrix(rng, rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // fix phases so the draw does not depend on QR sign conventions
  for (int j = 0; j < cols; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

Matrix random_projection(Rng& rng, int dim, int rank) {
  if (rank == 0) return Matrix::Zero(dim, dim);
  Matrix q = random_isometry(rng, dim, rank);
  return q * q.adjoint();
}

InnerSpec random_inner_spec_dims(Rng& rng, int codomain_dim, int domain_dim,
                                 int n_factors, double max_zero) {
  std::vector<BlaschkeFactor> factors;
  factors.reserve(n_factors);
  for (int i = 0; i < n_factors; ++i) {
    const double radius = rng.uniform(0.0, max_zero);
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const int rank = rng.uniform_int(1, codomain_dim);
    Matrix p = rank == codomain_dim
                   ? Matrix::Identity(codomain_dim, codomain_dim)
                   : random_projection(rng, codomain_dim, rank);
    factors.push_back(BlaschkeFactor{std::polar(radius, angle), std::move(p),
                                     rank == codomain_dim});
  }
  Matrix v = domain_dim == codomain_dim
                 ? random_isometry(rng, codomain_dim, codomain_dim)
                 : random_isometry(rng, codomain_dim, domain_dim);
  return InnerSpec(std::move(v), std::move(factors));
}

InnerSpec random_inner_spec(Rng& rng, int max_codomain, int max_factors,
                            double max_zero) {
  const int d = rng.uniform_int(1, max_codomain);
  const int d2 = rng.uniform_int(1, d);
  const int m = rng.uniform_int(1, max_factors);
  return random_inner_spec_dims(rng, d, d2, m, max_zero);
}

SubspaceBasis random_subspace(Rng& rng, const AmbientSpec& ambient, int k) {
  Matrix cols = random_gaussian_matrix(rng, ambient.total_dim(), k);
  // keep support below the truncation boundary
  cols.middleRows(ambient.max_degree * ambient.fiber_dim, ambient.fiber_dim)
      .setZero();
  Matrix q = mgs_orthonormalize(cols, 1e-10);
  return make_subspace_basis(std::move(q), ambient, "random");
}

}  // namespace bshift
