#pragma once

// Real basis of Hermitian operators on the symmetric subspace and affine
// decompositions of symmetric mixed states over separable projectors
// |e_i>^{(x)N}<e_i|.
//
// Operator index order: diagonal k = 0..N, then real off-diagonal (k, j) with
// k < j in lexicographic order, then imaginary off-diagonal in the same order.

#include "symfam/core.hpp"

#include <Eigen/LU>

#include <cstdint>
#include <vector>

namespace symfam {

enum class OperatorKind { diagonal, real_offdiag, imag_offdiag };

struct OperatorIndex {
  OperatorKind kind;
  int k;
  int j;  // equals k for diagonal entries

  friend bool operator==(const OperatorIndex&, const OperatorIndex&) = default;
};

/// The (N+1)^2 indices in basis order.
std::vector<OperatorIndex> operator_indices(int n_qubits);

/// |D_k><D_k|, |D_k><D_j| + |D_j><D_k|, or i(|D_k><D_j| - |D_j><D_k|).
CMatrix sigma_matrix(int n_qubits, const OperatorIndex& idx);

/// Coefficients f with |e><e|^{(x)N} = sum_l f_l sigma_l for the spin-coherent
/// state pointing at p.
Eigen::VectorXd f_coeffs(int n_qubits, const BlochPoint& p);
/// Same, with derivatives in theta and phi.
Eigen::VectorXd f_coeffs(int n_qubits, const BlochPoint& p, Eigen::VectorXd& d_theta,
                         Eigen::VectorXd& d_phi);

/// Coordinates r of a Hermitian matrix in the sigma basis (rho = sum_l r_l sigma_l).
Eigen::VectorXd hermitian_coordinates(const CMatrix& h);

inline constexpr double kDefaultConditionThreshold = 1e8;
inline constexpr double kSingularConditionLimit = 1e12;

/// Rejection sampling of (N+1)^2 uniform points until cond(F) < cond_threshold.
/// Throws ConditioningError (carrying the best condition number seen) when
/// max_attempts candidate sets are exhausted.
std::vector<BlochPoint> choose_points(int n_qubits, std::uint64_t seed,
                                      double cond_threshold = kDefaultConditionThreshold,
                                      int max_attempts = 50);

/// Moves the points uphill on log|det F| (a Fekete-type spreading). The result
/// is much better conditioned than a random draw, and the convex hull of the
/// projectors contains a sizeable ball around its barycenter.
std::vector<BlochPoint> spread_points(int n_qubits, std::vector<BlochPoint> points,
                                      int iterations = 300);

class SeparableBasis {
 public:
  /// Requires exactly (N+1)^2 points; throws DomainError if F is singular
  /// (condition number above kSingularConditionLimit).
  static SeparableBasis build(int n_qubits, std::vector<BlochPoint> directions);

  int n_qubits() const { return n_qubits_; }
  const std::vector<BlochPoint>& directions() const { return directions_; }
  /// F(i, l) = f_l(direction i).
  const Eigen::MatrixXd& f_matrix() const { return f_; }
  double condition_number() const { return condition_; }

  /// Unique x with rho = sum_i x_i |e_i><e_i|^{(x)N}; sum_i x_i = Tr rho.
  Eigen::VectorXd decompose(const CMatrix& rho) const;
  Eigen::VectorXd decompose(const SymmetricDensityMatrix& rho) const;
  CMatrix reconstruct(const Eigen::VectorXd& coeffs) const;
  /// |e_i><e_i|^{(x)N} as an (N+1)x(N+1) matrix.
  CMatrix projector(std::size_t i) const;

 private:
  SeparableBasis() = default;

  int n_qubits_ = 0;
  std::vector<BlochPoint> directions_;
  Eigen::MatrixXd f_;
  Eigen::PartialPivLU<Eigen::MatrixXd> ft_lu_;
  double condition_ = 0.0;
};

/// 2-norm condition number via singular values (infinity if singular).
double condition_number(const Eigen::MatrixXd& m);

/// F for the given points.
Eigen::MatrixXd f_matrix(int n_qubits, const std::vector<BlochPoint>& points);

}  // namespace symfam
