#include "symfam/sepbasis.hpp"

#include "symfam/errors.hpp"
#include "symfam/random.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace symfam {

std::vector<OperatorIndex> operator_indices(int n) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  std::vector<OperatorIndex> out;
  out.reserve(std::size_t((n + 1) * (n + 1)));
  for (int k = 0; k <= n; ++k) out.push_back({OperatorKind::diagonal, k, k});
  for (auto kind : {OperatorKind::real_offdiag, OperatorKind::imag_offdiag})
    for (int k = 0; k <= n; ++k)
      for (int j = k + 1; j <= n; ++j) out.push_back({kind, k, j});
  return out;
}

CMatrix sigma_matrix(int n, const OperatorIndex& idx) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  const bool diag = idx.kind == OperatorKind::diagonal;
  if (idx.k < 0 || idx.k > n || idx.j > n || (diag ? idx.j != idx.k : idx.j <= idx.k))
    throw DomainError("invalid operator index");
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  switch (idx.kind) {
    case OperatorKind::diagonal:
      m(idx.k, idx.k) = 1.0;
      break;
    case OperatorKind::real_offdiag:
      m(idx.k, idx.j) = m(idx.j, idx.k) = 1.0;
      break;
    case OperatorKind::imag_offdiag:
      m(idx.k, idx.j) = Complex(0.0, 1.0);
      m(idx.j, idx.k) = Complex(0.0, -1.0);
      break;
  }
  return m;
}

Eigen::VectorXd hermitian_coordinates(const CMatrix& h) {
  // With the basis above, sum_l r_l sigma_l has (k,k) entry r_kk and (k,j)
  // entry r^r_kj + i r^i_kj for k < j.
  const int n = int(h.rows()) - 1;
  const int pairs = n * (n + 1) / 2;
  Eigen::VectorXd r((n + 1) * (n + 1));
  int at = 0;
  for (int k = 0; k <= n; ++k) r[at++] = h(k, k).real();
  for (int k = 0; k <= n; ++k)
    for (int j = k + 1; j <= n; ++j, ++at) {
      r[at] = h(k, j).real();
      r[at + pairs] = h(k, j).imag();
    }
  return r;
}

namespace {

// c^p with the convention 0^0 = 1 and a zero for negative p (those terms carry
// a zero prefactor wherever they appear).
double ipow(double c, int p) { return p < 0 ? 0.0 : std::pow(c, p); }

}  // namespace

Eigen::VectorXd f_coeffs(int n, const BlochPoint& p, Eigen::VectorXd& d_theta,
                         Eigen::VectorXd& d_phi) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  const int dim = (n + 1) * (n + 1), pairs = n * (n + 1) / 2;
  Eigen::VectorXd f(dim);
  d_theta.resize(dim);
  d_phi.resize(dim);
  const double c = std::cos(p.theta / 2.0), s = std::sin(p.theta / 2.0);

  // g_kj = sqrt(C_k C_j) c^(2N-k-j) s^(k+j) e^{i(k-j)phi}; the expansion of
  // |e><e|^{(x)N} in the Dicke basis has entries g_kj at (k, j).
  auto term = [&](int k, int j, Complex& g, Complex& gt, Complex& gp) {
    const int a = 2 * n - k - j, b = k + j;
    const double pref = std::sqrt(binomial(n, k) * binomial(n, j));
    const Complex ph = std::polar(1.0, (k - j) * p.phi);
    const double mag = pref * ipow(c, a) * ipow(s, b);
    const double dmag = pref * 0.5 * (b * ipow(c, a + 1) * ipow(s, b - 1) - a * ipow(c, a - 1) * ipow(s, b + 1));
    g = mag * ph;
    gt = dmag * ph;
    gp = Complex(0.0, k - j) * g;
  };

  int at = 0;
  Complex g, gt, gp;
  for (int k = 0; k <= n; ++k, ++at) {
    term(k, k, g, gt, gp);
    f[at] = g.real();
    d_theta[at] = gt.real();
    d_phi[at] = 0.0;
  }
  for (int k = 0; k <= n; ++k)
    for (int j = k + 1; j <= n; ++j, ++at) {
      term(k, j, g, gt, gp);
      f[at] = g.real();
      f[at + pairs] = g.imag();
      d_theta[at] = gt.real();
      d_theta[at + pairs] = gt.imag();
      d_phi[at] = gp.real();
      d_phi[at + pairs] = gp.imag();
    }
  return f;
}

Eigen::VectorXd f_coeffs(int n, const BlochPoint& p) {
  Eigen::VectorXd dt, dp;
  return f_coeffs(n, p, dt, dp);
}

Eigen::MatrixXd f_matrix(int n, const std::vector<BlochPoint>& points) {
  Eigen::MatrixXd f(Eigen::Index(points.size()), (n + 1) * (n + 1));
  for (std::size_t i = 0; i < points.size(); ++i) f.row(Eigen::Index(i)) = f_coeffs(n, points[i]).transpose();
  return f;
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double lo = sv[sv.size() - 1];
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return sv[0] / lo;
}

std::vector<BlochPoint> choose_points(int n, std::uint64_t seed, double cond_threshold,
                                      int max_attempts) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  if (!(cond_threshold > 1.0) || max_attempts < 1)
    throw DomainError("choose_points: need cond_threshold > 1 and max_attempts >= 1");
  const std::size_t count = std::size_t((n + 1) * (n + 1));
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    KeyedRng rng(seed, streams::kBasisPoints, std::uint64_t(attempt));
    std::vector<BlochPoint> pts(count);
    for (auto& p : pts) p = rng.sphere_point();
    const double cond = condition_number(f_matrix(n, pts));
    if (cond < cond_threshold) return pts;
    best = std::min(best, cond);
  }
  throw ConditioningError("choose_points: no well-conditioned point set in " +
                              std::to_string(max_attempts) + " attempts",
                          best);
}

std::vector<BlochPoint> spread_points(int n, std::vector<BlochPoint> pts, int iterations) {
  const auto m = Eigen::Index(pts.size());
  if (m != (n + 1) * (n + 1)) throw DomainError("spread_points: need (N+1)^2 points");

  // Work in Cartesian coordinates and project the gradient onto the tangent
  // plane, which avoids the coordinate singularity at the poles.
  auto log_det = [&](const std::vector<BlochPoint>& p, Eigen::MatrixXd* inv) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(f_matrix(n, p));
    const Eigen::MatrixXd& u = lu.matrixLU();
    double s = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) s += std::log(std::abs(u(i, i)));
    if (inv) *inv = lu.inverse();
    return std::isfinite(s) ? s : -std::numeric_limits<double>::infinity();
  };

  Eigen::MatrixXd inv;
  double current = log_det(pts, &inv);
  double step = 0.05;
  for (int it = 0; it < iterations && step > 1e-8; ++it) {
    // d log|det F| / d row_i = column i of F^{-1}.
    std::vector<Eigen::Vector3d> grad(pts.size());
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXd dt, dp;
      f_coeffs(n, pts[std::size_t(i)], dt, dp);
      const double gt = inv.col(i).dot(dt), gp = inv.col(i).dot(dp);
      const double th = pts[std::size_t(i)].theta, ph = pts[std::size_t(i)].phi;
      const Eigen::Vector3d e_theta(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
      const Eigen::Vector3d e_phi(-std::sin(ph), std::cos(ph), 0.0);
      const double st = std::sin(th);
      grad[std::size_t(i)] = gt * e_theta + (st > 1e-12 ? gp / st : 0.0) * e_phi;
    }
    double scale = 0.0;
    for (const auto& g : grad) scale = std::max(scale, g.norm());
    if (!(scale > 0.0)) break;

    for (;;) {
      std::vector<BlochPoint> trial(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        trial[i] = BlochPoint::from_cartesian((pts[i].cartesian() + (step / scale) * grad[i]).normalized());
      Eigen::MatrixXd trial_inv;
      const double v = log_det(trial, &trial_inv);
      if (v > current) {
        pts = std::move(trial);
        inv = std::move(trial_inv);
        current = v;
        step *= 1.2;
        break;
      }
      step *= 0.5;
      if (step <= 1e-8) break;
    }
  }
  return pts;
}

SeparableBasis SeparableBasis::build(int n, std::vector<BlochPoint> directions) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  const std::size_t need = std::size_t((n + 1) * (n + 1));
  if (directions.size() != need)
    throw DomainError("separable basis needs " + std::to_string(need) + " directions, got " +
                      std::to_string(directions.size()));
  SeparableBasis b;
  b.n_qubits_ = n;
  b.directions_ = std::move(directions);
  b.f_ = symfam::f_matrix(n, b.directions_);
  b.condition_ = symfam::condition_number(b.f_);
  if (!(b.condition_ <= kSingularConditionLimit))
    throw DomainError("separable basis is singular (condition number " + std::to_string(b.condition_) + ")");
  b.ft_lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(b.f_.transpose());

  // Each row must reproduce the outer product of its spin-coherent state.
  const auto idx = operator_indices(n);
  for (std::size_t i = 0; i < b.directions_.size(); ++i) {
    CMatrix from_rows = CMatrix::Zero(n + 1, n + 1);
    for (std::size_t l = 0; l < idx.size(); ++l)
      from_rows += b.f_(Eigen::Index(i), Eigen::Index(l)) * sigma_matrix(n, idx[l]);
    if ((from_rows - b.projector(i)).cwiseAbs().maxCoeff() > 1e-12)
      throw NumericalError("separable basis row does not reproduce its projector");
  }
  return b;
}

CMatrix SeparableBasis::projector(std::size_t i) const {
  const ConstellationPoint p{directions_.at(i), n_qubits_};
  const CVector v = detail::symmetrized_product(n_qubits_, std::span(&p, 1));
  return v * v.adjoint();
}

Eigen::VectorXd SeparableBasis::decompose(const CMatrix& rho) const {
  if (rho.rows() != n_qubits_ + 1 || rho.cols() != n_qubits_ + 1)
    throw DomainError("decompose: matrix size does not match the basis");
  // rho = sum_i x_i P_i = sum_l (sum_i x_i F_il) sigma_l, so F^T x = r.
  return ft_lu_.solve(hermitian_coordinates(rho));
}

Eigen::VectorXd SeparableBasis::decompose(const SymmetricDensityMatrix& rho) const {
  if (rho.n_qubits() != n_qubits_) throw DomainError("decompose: N does not match the basis");
  return decompose(rho.entries());
}

CMatrix SeparableBasis::reconstruct(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != f_.rows()) throw DomainError("reconstruct: wrong coefficient count");
  const Eigen::VectorXd r = f_.transpose() * coeffs;
  const auto idx = operator_indices(n_qubits_);
  CMatrix m = CMatrix::Zero(n_qubits_ + 1, n_qubits_ + 1);
  for (std::size_t l = 0; l < idx.size(); ++l) m += r[Eigen::Index(l)] * sigma_matrix(n_qubits_, idx[l]);
  return m;
}

}  // namespace symfam
