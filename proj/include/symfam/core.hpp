#pragma once

// Symmetric N-qubit states in the Dicke basis and their Majorana
// constellations.
//
// A symmetric state with Dicke amplitudes c_0..c_N is the symmetrized product
// of N single-qubit states |e_i> = cos(theta_i/2)|0> + sin(theta_i/2)e^{i phi_i}|1>.
// The conversion in both directions goes through the Majorana polynomial
//
//     R(w) = sum_k (-1)^k sqrt(C(N,k)) c_k w^(N-k),
//
// whose roots are w_i = tan(theta_i/2) e^{i phi_i}. Roots at w = 0 are points
// at the north pole |0>; missing leading degree means roots at w = infinity,
// i.e. points at the south pole |1>. With this convention dicke(N,k) has
// N-k points at |0> and k points at |1>.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace symfam {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDefaultCoincidenceTol = 1e-6;

/// Pure state of N qubits restricted to the symmetric subspace.
class SymmetricState {
 public:
  /// Validates |c|^2 sums to 1 within kNormTolerance.
  static SymmetricState from_amplitudes(int n_qubits, CVector amplitudes);
  /// Rescales to unit norm; fails with NumericalError on a (numerically) zero vector.
  static SymmetricState normalized(int n_qubits, CVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int k) const { return amplitudes_[k]; }

 private:
  SymmetricState(int n, CVector a) : n_qubits_(n), amplitudes_(std::move(a)) {}

  int n_qubits_;
  CVector amplitudes_;
};

/// Point on the Bloch sphere. Construct through make() to get canonical
/// coordinates: theta clamped to [0, pi], phi reduced to [0, 2pi), phi = 0 at
/// the poles.
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;

  static BlochPoint make(double theta, double phi);
  static BlochPoint from_cartesian(const Eigen::Vector3d& v);

  Eigen::Vector3d cartesian() const;
  Complex alpha() const;  // cos(theta/2)
  Complex beta() const;   // sin(theta/2) e^{i phi}

  friend bool operator==(const BlochPoint&, const BlochPoint&) = default;
};

double chordal_distance(const BlochPoint& a, const BlochPoint& b);
/// Angle between the two Bloch vectors, in [0, pi].
double bloch_angle(const BlochPoint& a, const BlochPoint& b);

struct ConstellationPoint {
  BlochPoint point;
  int multiplicity = 1;
};

/// Majorana constellation: distinct points with multiplicities summing to N.
/// Points are kept in canonical order (multiplicity desc, theta asc, phi asc).
class Constellation {
 public:
  Constellation(int n_qubits, std::vector<ConstellationPoint> points);

  int n_qubits() const { return n_qubits_; }
  const std::vector<ConstellationPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Multiplicities in canonical (non-increasing) order.
  std::vector<int> multiplicities() const;
  /// Smallest chordal distance between two listed points (infinity if fewer than two).
  double min_separation() const;

 private:
  int n_qubits_;
  std::vector<ConstellationPoint> points_;
};

/// Hermitian, PSD, trace-one operator on the symmetric subspace.
class SymmetricDensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kEigenvalueTol = 1e-10;
  static constexpr double kTraceTol = 1e-12;

  /// Validates the invariants above; throws DomainError on violation.
  static SymmetricDensityMatrix from_entries(int n_qubits, CMatrix entries);

  int n_qubits() const { return n_qubits_; }
  const CMatrix& entries() const { return entries_; }

  static SymmetricDensityMatrix maximally_mixed(int n_qubits);

 private:
  SymmetricDensityMatrix(int n, CMatrix m) : n_qubits_(n), entries_(std::move(m)) {}

  int n_qubits_;
  CMatrix entries_;
};

SymmetricState dicke(int n_qubits, int k);
SymmetricState ghz(int n_qubits);
/// N = 4 state whose Majorana points form a regular tetrahedron.
SymmetricState tetrahedron_state();

/// Normalized symmetrized product of the constellation's single-qubit states.
SymmetricState from_constellation(const Constellation& c);

/// Inverse of from_constellation up to global phase. Roots of the Majorana
/// polynomial are computed as companion-matrix eigenvalues, numerically
/// multiple roots are resolved into a single point with multiplicity, and
/// points closer than coincidence_tol (chordal) are merged.
Constellation to_constellation(const SymmetricState& s,
                               double coincidence_tol = kDefaultCoincidenceTol);

/// <a|b>.
Complex overlap(const SymmetricState& a, const SymmetricState& b);

SymmetricDensityMatrix projector(const SymmetricState& s);

struct MixTerm {
  double weight;
  const SymmetricDensityMatrix* rho;
};

/// Convex combination; weights must be nonnegative and sum to 1 within 1e-10.
SymmetricDensityMatrix mix(std::span<const MixTerm> terms);

/// Action of U^{(x)N} on a symmetric state, for a 2x2 matrix U.
SymmetricState apply_local_unitary(const SymmetricState& s, const Eigen::Matrix2cd& u);

/// Half the sum of singular values of a - b (both Hermitian).
double trace_distance(const CMatrix& a, const CMatrix& b);

/// C(n, k) as a double; exact for the sizes used here.
double binomial(int n, int k);

namespace detail {

/// Unnormalized symmetrized product; amplitudes are e_k / sqrt(C(N,k)) where
/// e_k is the t^k coefficient of prod_i (alpha_i + beta_i t).
CVector symmetrized_product(int n_qubits, std::span<const ConstellationPoint> points);

}  // namespace detail

}  // namespace symfam
