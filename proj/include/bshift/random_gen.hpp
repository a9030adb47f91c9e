#pragma once

#include <cstdint>
#include <random>

#include "bshift/inner.hpp"
#include "bshift/subspace.hpp"

namespace bshift {

// All randomness in the workbench flows through one seeded engine, so every
// sweep is reproducible from a scenario seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double gaussian() { return normal_(engine_); }
  Complex complex_gaussian() { return Complex(gaussian(), gaussian()); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

Matrix random_gaussian_matrix(Rng& rng, int rows, int cols);
Vector random_vector(Rng& rng, int dim);

// QR-based isometry (rows >= cols) with a deterministic phase fix.
Matrix random_isometry(Rng& rng, int rows, int cols);

// Orthogonal projection of the given rank.
Matrix random_projection(Rng& rng, int dim, int rank);

// Random rational inner function: up to max_factors Blaschke-Potapov
// factors with |zero| <= max_zero, random projection ranks, constant
// isometry from C^{domain_dim} (drawn in 1..codomain) into C^{codomain}.
InnerSpec random_inner_spec(Rng& rng, int max_codomain = 3,
                            int max_factors = 4, double max_zero = 0.5);
InnerSpec random_inner_spec_dims(Rng& rng, int codomain_dim, int domain_dim,
                                 int n_factors, double max_zero = 0.5);

// Random k-dimensional subspace with analytic support kept below degree N,
// so one shift application stays representable.
SubspaceBasis random_subspace(Rng& rng, const AmbientSpec& ambient, int k);

}  // namespace bshift
