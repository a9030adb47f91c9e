#pragma once

#include <stdexcept>

#include "bshift/types.hpp"

namespace bshift {

// Residual tolerances scale with the problem dimension. Dense complex
// arithmetic at desk scale keeps rounding errors far below this.
inline double default_tolerance(int problem_dim) {
  return 1e-9 * static_cast<double>(problem_dim);
}

// Callers pass tol <= 0 to request the default.
inline double resolve_tolerance(double requested, int problem_dim) {
  return requested > 0.0 ? requested : default_tolerance(problem_dim);
}

// Singular values below kRankFactor * sigma_max count as zero. Values within
// a factor kRankAmbiguityBand of that threshold are refused instead of
// guessed: a misranked subspace silently corrupts everything downstream.
inline constexpr double kRankFactor = 1e-7;
inline constexpr double kRankAmbiguityBand = 10.0;

class RankAmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank of a singular value sequence (descending order), with the ambiguity
// guard above. Throws RankAmbiguityError when a value falls in the band.
int rank_by_threshold(const RealVector& singular_values,
                      double abs_floor = 1e-13);

}  // namespace bshift
