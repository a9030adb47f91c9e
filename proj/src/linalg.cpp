#include "bshift/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SVD>

namespace bshift {

int rank_by_threshold(const RealVector& singular_values, double abs_floor) {
  if (singular_values.size() == 0) return 0;
  const double sigma_max = singular_values(0);
  if (sigma_max <= abs_floor) return 0;
  const double threshold = kRankFactor * sigma_max;
  int rank = 0;
  for (int i = 0; i < singular_values.size(); ++i) {
    const double s = singular_values(i);
    if (s > threshold && s <= kRankAmbiguityBand * threshold) {
      std::ostringstream msg;
      msg << "rank decision ambiguous: singular value " << s
          << " within a factor of " << kRankAmbiguityBand
          << " of the threshold " << threshold << "; increase N";
      throw RankAmbiguityError(msg.str());
    }
    if (s > threshold) ++rank;
  }
  return rank;
}

Matrix mgs_orthonormalize(const Matrix& cols, double drop_tol,
                          bool allow_drop) {
  const int k = static_cast<int>(cols.cols());
  Matrix q(cols.rows(), k);
  int kept = 0;
  for (int i = 0; i < k; ++i) {
    Vector v = cols.col(i);
    const double original = v.norm();
    // two orthogonalization passes against everything kept so far
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < kept; ++j) {
        v -= (q.col(j).adjoint() * v)(0) * q.col(j);
      }
    }
    const double remaining = v.norm();
    if (original == 0.0 || remaining < drop_tol * original) {
      if (allow_drop) continue;
      throw std::invalid_argument(
          "mgs_orthonormalize: dependent column at index " +
          std::to_string(i));
    }
    q.col(kept++) = v / remaining;
  }
  return q.leftCols(kept);
}

Matrix orthonormal_range(const Matrix& a) {
  if (a.cols() == 0 || a.norm() == 0.0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const int rank = rank_by_threshold(svd.singularValues());
  return svd.matrixU().leftCols(rank);
}

Matrix complement_coords(int k, const Matrix& inner_coords) {
  if (inner_coords.cols() == 0) return Matrix::Identity(k, k);
  // Full SVD of the k x r frame: right null directions of inner^* are the
  // complement.
  Eigen::JacobiSVD<Matrix> svd(inner_coords, Eigen::ComputeFullU);
  const int rank = rank_by_threshold(svd.singularValues());
  return svd.matrixU().rightCols(k - rank);
}

RealVector principal_angles(const Matrix& q1, const Matrix& q2) {
  if (q1.cols() == 0 || q2.cols() == 0) return RealVector(0);
  Matrix overlap = q1.adjoint() * q2;
  Eigen::JacobiSVD<Matrix> svd(overlap);
  RealVector cosines = svd.singularValues();
  RealVector angles(cosines.size());
  for (int i = 0; i < cosines.size(); ++i) {
    angles(i) = std::acos(std::min(1.0, std::max(0.0, cosines(i))));
  }
  std::sort(angles.data(), angles.data() + angles.size());
  return angles;
}

double max_principal_angle(const Matrix& q1, const Matrix& q2) {
  if (q1.cols() != q2.cols()) return std::acos(0.0);
  if (q1.cols() == 0) return 0.0;
  RealVector angles = principal_angles(q1, q2);
  const double coarse = angles(angles.size() - 1);
  if (coarse > 1e-4) return coarse;
  // near zero the cosine route loses half the digits; use the sine
  Matrix residual = q2 - q1 * (q1.adjoint() * q2);
  return std::asin(std::min(1.0, spectral_norm(residual)));
}

double projection_residual(const Matrix& q, const Vector& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.adjoint() * v)).norm();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() >= 400 || a.cols() >= 400) {
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace bshift
