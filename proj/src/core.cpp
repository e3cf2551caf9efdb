#include "symfam/core.hpp"

#include "symfam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace symfam {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// ---------------------------------------------------------------------------
// SymmetricState

SymmetricState SymmetricState::from_amplitudes(int n_qubits, CVector amplitudes) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  if (amplitudes.size() != n_qubits + 1)
    throw DomainError("expected " + std::to_string(n_qubits + 1) + " amplitudes, got " +
                      std::to_string(amplitudes.size()));
  const double norm2 = amplitudes.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance)
    throw DomainError("state is not normalized (|c|^2 = " + std::to_string(norm2) + ")");
  return SymmetricState(n_qubits, std::move(amplitudes));
}

SymmetricState SymmetricState::normalized(int n_qubits, CVector amplitudes) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  if (amplitudes.size() != n_qubits + 1) throw DomainError("amplitude count must be N+1");
  const double norm = amplitudes.norm();
  if (!(norm > 1e-14)) throw NumericalError("cannot normalize a numerically zero vector");
  amplitudes /= norm;
  return SymmetricState(n_qubits, std::move(amplitudes));
}

// ---------------------------------------------------------------------------
// BlochPoint

BlochPoint BlochPoint::make(double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  theta = std::clamp(theta, 0.0, pi);
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi = 0.0;
  if (theta == 0.0 || theta == pi) phi = 0.0;
  return {theta, phi};
}

BlochPoint BlochPoint::from_cartesian(const Eigen::Vector3d& v) {
  const double rho = std::hypot(v.x(), v.y());
  return make(std::atan2(rho, v.z()), rho == 0.0 ? 0.0 : std::atan2(v.y(), v.x()));
}

Eigen::Vector3d BlochPoint::cartesian() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Complex BlochPoint::alpha() const { return {std::cos(theta / 2.0), 0.0}; }

Complex BlochPoint::beta() const { return std::polar(std::sin(theta / 2.0), phi); }

double chordal_distance(const BlochPoint& a, const BlochPoint& b) {
  return (a.cartesian() - b.cartesian()).norm();
}

double bloch_angle(const BlochPoint& a, const BlochPoint& b) {
  const Eigen::Vector3d u = a.cartesian(), v = b.cartesian();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

// ---------------------------------------------------------------------------
// Constellation

Constellation::Constellation(int n_qubits, std::vector<ConstellationPoint> points)
    : n_qubits_(n_qubits), points_(std::move(points)) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  int total = 0;
  for (const auto& p : points_) {
    if (p.multiplicity < 1) throw DomainError("constellation multiplicities must be >= 1");
    total += p.multiplicity;
  }
  if (total != n_qubits)
    throw DomainError("constellation multiplicities sum to " + std::to_string(total) +
                      ", expected " + std::to_string(n_qubits));
  std::stable_sort(points_.begin(), points_.end(), [](const auto& a, const auto& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    if (a.point.theta != b.point.theta) return a.point.theta < b.point.theta;
    return a.point.phi < b.point.phi;
  });
}

std::vector<int> Constellation::multiplicities() const {
  std::vector<int> m;
  m.reserve(points_.size());
  for (const auto& p : points_) m.push_back(p.multiplicity);
  return m;
}

double Constellation::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      best = std::min(best, chordal_distance(points_[i].point, points_[j].point));
  return best;
}

// ---------------------------------------------------------------------------
// SymmetricDensityMatrix

SymmetricDensityMatrix SymmetricDensityMatrix::from_entries(int n_qubits, CMatrix entries) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  const auto dim = n_qubits + 1;
  if (entries.rows() != dim || entries.cols() != dim)
    throw DomainError("density matrix must be (N+1)x(N+1)");
  if (!entries.allFinite()) throw DomainError("density matrix has non-finite entries");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) throw DomainError("density matrix is not Hermitian");
  CMatrix herm = 0.5 * (entries + entries.adjoint());
  const Complex tr = herm.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
    throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenvalueTol)
    throw DomainError("density matrix is not positive semidefinite");
  return SymmetricDensityMatrix(n_qubits, std::move(herm));
}

SymmetricDensityMatrix SymmetricDensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  const auto dim = n_qubits + 1;
  return SymmetricDensityMatrix(n_qubits, CMatrix::Identity(dim, dim) / double(dim));
}

// ---------------------------------------------------------------------------
// Named states

SymmetricState dicke(int n_qubits, int k) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  if (k < 0 || k > n_qubits) throw DomainError("Dicke excitation k out of range");
  CVector a = CVector::Zero(n_qubits + 1);
  a[k] = 1.0;
  return SymmetricState::from_amplitudes(n_qubits, std::move(a));
}

SymmetricState ghz(int n_qubits) {
  if (n_qubits < 2) throw DomainError("GHZ requires N >= 2");
  CVector a = CVector::Zero(n_qubits + 1);
  a[0] = a[n_qubits] = std::numbers::sqrt2 / 2.0;
  return SymmetricState::from_amplitudes(n_qubits, std::move(a));
}

SymmetricState tetrahedron_state() {
  CVector a = CVector::Zero(5);
  a[0] = std::sqrt(1.0 / 3.0);
  a[3] = std::sqrt(2.0 / 3.0);
  return SymmetricState::normalized(4, std::move(a));
}

// ---------------------------------------------------------------------------

Complex overlap(const SymmetricState& a, const SymmetricState& b) {
  if (a.n_qubits() != b.n_qubits()) throw DomainError("overlap: mismatched n_qubits");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

SymmetricDensityMatrix projector(const SymmetricState& s) {
  return SymmetricDensityMatrix::from_entries(s.n_qubits(),
                                              s.amplitudes() * s.amplitudes().adjoint());
}

SymmetricDensityMatrix mix(std::span<const MixTerm> terms) {
  if (terms.empty()) throw DomainError("mix: no terms");
  const int n = terms.front().rho->n_qubits();
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.rho->n_qubits() != n) throw DomainError("mix: mismatched n_qubits");
    if (!(t.weight >= 0.0)) throw DomainError("mix: negative weight");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("mix: weights do not sum to 1");
  CMatrix acc = CMatrix::Zero(n + 1, n + 1);
  for (const auto& t : terms) acc += (t.weight / total) * t.rho->entries();
  return SymmetricDensityMatrix::from_entries(n, std::move(acc));
}

SymmetricState apply_local_unitary(const SymmetricState& s, const Eigen::Matrix2cd& u) {
  // Identify the state with the binary form sum_k c_k sqrt(C(N,k)) x^(N-k) y^k and
  // substitute x -> u00 x + u10 y, y -> u01 x + u11 y.
  const int n = s.n_qubits();
  CVector out = CVector::Zero(n + 1);
  std::vector<CVector> xpow(n + 1), ypow(n + 1);
  xpow[0] = ypow[0] = CVector::Ones(1);
  for (int p = 1; p <= n; ++p) {
    auto step = [](const CVector& prev, Complex c0, Complex c1) {
      CVector next = CVector::Zero(prev.size() + 1);
      next.head(prev.size()) += c0 * prev;
      next.tail(prev.size()) += c1 * prev;
      return next;
    };
    xpow[p] = step(xpow[p - 1], u(0, 0), u(1, 0));
    ypow[p] = step(ypow[p - 1], u(0, 1), u(1, 1));
  }
  for (int k = 0; k <= n; ++k) {
    const Complex coeff = s[k] * std::sqrt(binomial(n, k));
    if (coeff == Complex(0.0)) continue;
    const CVector& xp = xpow[n - k];
    const CVector& yp = ypow[k];
    for (Eigen::Index i = 0; i < xp.size(); ++i)
      for (Eigen::Index j = 0; j < yp.size(); ++j) out[i + j] += coeff * xp[i] * yp[j];
  }
  for (int k = 0; k <= n; ++k) out[k] /= std::sqrt(binomial(n, k));
  return SymmetricState::normalized(n, std::move(out));
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const CMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace symfam
