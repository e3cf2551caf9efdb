#include "symfam/witness.hpp"

#include "symfam/errors.hpp"
#include "symfam/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace symfam {

void OptimizerConfig::validate() const {
  if (n_starts < 1 || max_iterations < 1 || !(convergence_tol > 0.0) || min_agreeing < 1 ||
      !(agreement_tol > 0.0) || max_starts < n_starts)
    throw DomainError("invalid optimizer configuration");
}

// ---------------------------------------------------------------------------
// Objective

FamilyOverlap::FamilyOverlap(const SymmetricState& psi, const DegeneracyConfiguration& family)
    : n_(psi.n_qubits()), parts_(family.parts()), psi_(psi.amplitudes()) {
  if (family.n() != n_)
    throw DomainError("family " + family.to_string() + " is not a partition of N = " +
                      std::to_string(n_));
  for (int k = 0; k <= n_; ++k) psi_[k] *= 1.0 / std::sqrt(binomial(n_, k));
}

namespace {

using Poly = std::vector<Complex>;

void times_linear(Poly& p, Complex a, Complex b) {
  p.push_back(0.0);
  for (std::size_t k = p.size() - 1; k >= 1; --k) p[k] = a * p[k] + b * p[k - 1];
  p[0] *= a;
}

struct Spinor {
  Complex a, b, da_dtheta, db_dtheta;
};

Spinor spinor(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  return {c, s * e, -0.5 * s, 0.5 * c * e};
}

}  // namespace

// psi_ already carries the 1/sqrt(C(N,k)) factor of the symmetrized product, so
// <S|psi> = sum_k conj(e_k) psi_[k] and <S|S> = sum_k |e_k|^2 / C(N,k).

double FamilyOverlap::value(const Eigen::VectorXd& x) const {
  Poly e{1.0};
  e.reserve(std::size_t(n_) + 1);
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    const Spinor sp = spinor(x[2 * j], x[2 * j + 1]);
    for (int r = 0; r < parts_[j]; ++r) times_linear(e, sp.a, sp.b);
  }
  Complex amp = 0.0;
  double norm2 = 0.0;
  for (int k = 0; k <= n_; ++k) {
    amp += std::conj(e[k]) * psi_[k];
    norm2 += std::norm(e[k]) / binomial(n_, k);
  }
  return std::norm(amp) / norm2;
}

double FamilyOverlap::value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
  const std::size_t d = parts_.size();
  std::vector<Spinor> sp(d);
  for (std::size_t j = 0; j < d; ++j) sp[j] = spinor(x[2 * j], x[2 * j + 1]);

  auto inner = [&](const Poly& p, const Poly& q) {  // <p|q> in the symmetric metric
    Complex s = 0.0;
    for (int k = 0; k <= n_; ++k) s += std::conj(p[k]) * q[k] / binomial(n_, k);
    return s;
  };
  auto overlap_psi = [&](const Poly& p) {
    Complex s = 0.0;
    for (int k = 0; k <= n_; ++k) s += std::conj(p[k]) * psi_[k];
    return s;
  };

  Poly e{1.0};
  for (std::size_t j = 0; j < d; ++j)
    for (int r = 0; r < parts_[j]; ++r) times_linear(e, sp[j].a, sp[j].b);
  const Complex amp = overlap_psi(e);
  const double norm2 = inner(e, e).real();
  const double f = std::norm(amp) / norm2;

  grad.resize(2 * Eigen::Index(d));
  for (std::size_t j = 0; j < d; ++j) {
    // Product with one factor of point j removed.
    Poly rest{1.0};
    for (std::size_t i = 0; i < d; ++i)
      for (int r = 0; r < parts_[i] - (i == j ? 1 : 0); ++r) times_linear(rest, sp[i].a, sp[i].b);
    const Complex dirs[2][2] = {{sp[j].da_dtheta, sp[j].db_dtheta},
                                {0.0, Complex(0.0, 1.0) * sp[j].b}};
    for (int v = 0; v < 2; ++v) {
      Poly de = rest;
      times_linear(de, dirs[v][0], dirs[v][1]);
      for (auto& c : de) c *= double(parts_[j]);
      const Complex damp = overlap_psi(de);
      const double dnorm2 = 2.0 * inner(e, de).real();
      grad[2 * Eigen::Index(j) + v] =
          (2.0 * (std::conj(amp) * damp).real() * norm2 - std::norm(amp) * dnorm2) / (norm2 * norm2);
    }
  }
  return f;
}

Constellation FamilyOverlap::constellation(const Eigen::VectorXd& x) const {
  std::vector<ConstellationPoint> pts;
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    const double t = x[2 * j], p = x[2 * j + 1];
    const Eigen::Vector3d v(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
    pts.push_back({BlochPoint::from_cartesian(v), parts_[j]});
  }
  return Constellation(n_, std::move(pts));
}

// ---------------------------------------------------------------------------
// Local ascent

namespace {

// Nelder-Mead on -f, restarted from the best vertex with a shrinking simplex
// until a restart no longer improves the value.
LocalResult nelder_mead(const FamilyOverlap& f, Eigen::VectorXd x0, const OptimizerConfig& cfg) {
  const Eigen::Index n = x0.size();
  double step = 0.4;
  Eigen::VectorXd best = x0;
  double best_val = f.value(best);

  for (int restart = 0; restart < 8; ++restart) {
    std::vector<Eigen::VectorXd> simplex(std::size_t(n) + 1, best);
    std::vector<double> val(std::size_t(n) + 1);
    for (Eigen::Index i = 0; i < n; ++i) simplex[std::size_t(i) + 1][i] += step;
    for (std::size_t i = 0; i <= std::size_t(n); ++i) val[i] = -f.value(simplex[i]);

    std::vector<std::size_t> order(simplex.size());
    for (int it = 0; it < cfg.max_iterations; ++it) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] < val[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[order.size() - 2];
      if (val[hi] - val[lo] <= cfg.convergence_tol * 0.1) {
        double size = 0.0;
        for (const auto& v : simplex) size = std::max(size, (v - simplex[lo]).lpNorm<Eigen::Infinity>());
        if (size < 1e-7) break;
      }

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != hi) centroid += simplex[i];
      centroid /= double(n);

      const Eigen::VectorXd xr = centroid + (centroid - simplex[hi]);
      const double fr = -f.value(xr);
      if (fr < val[lo]) {
        const Eigen::VectorXd xe = centroid + 2.0 * (centroid - simplex[hi]);
        const double fe = -f.value(xe);
        if (fe < fr) {
          simplex[hi] = xe;
          val[hi] = fe;
        } else {
          simplex[hi] = xr;
          val[hi] = fr;
        }
        continue;
      }
      if (fr < val[second]) {
        simplex[hi] = xr;
        val[hi] = fr;
        continue;
      }
      const bool outside = fr < val[hi];
      const Eigen::VectorXd xc =
          outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                  : Eigen::VectorXd(centroid + 0.5 * (simplex[hi] - centroid));
      const double fc = -f.value(xc);
      if (fc < (outside ? fr : val[hi])) {
        simplex[hi] = xc;
        val[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i == lo) continue;
        simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
        val[i] = -f.value(simplex[i]);
      }
    }

    const auto lo = std::size_t(std::min_element(val.begin(), val.end()) - val.begin());
    const double gained = -val[lo] - best_val;
    if (-val[lo] > best_val) {
      best_val = -val[lo];
      best = simplex[lo];
    }
    if (restart > 0 && gained <= cfg.convergence_tol) break;
    step = std::max(step * 0.25, 1e-4);
  }
  return {best_val, best};
}

// BFGS ascent with a backtracking line search, using the analytic gradient.
LocalResult bfgs(const FamilyOverlap& f, Eigen::VectorXd x, const OptimizerConfig& cfg) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g, g_new;
  double fx = f.value_and_gradient(x, g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian of -f

  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (g.norm() < 1e-12) break;
    Eigen::VectorXd dir = h * g;
    if (dir.dot(g) <= 0.0) {
      h.setIdentity();
      dir = g;
    }
    double t = 1.0, f_new = 0.0;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + t * dir;
      f_new = f.value_and_gradient(x_new, g_new);
      if (f_new >= fx + 1e-4 * t * dir.dot(g)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g - g_new;  // gradient change of -f
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const Eigen::VectorXd hy = h * y;
      h += ((sy + y.dot(hy)) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    const double change = f_new - fx;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (change <= cfg.convergence_tol * 1e-2 && t < 1.0) break;
    if (change <= 1e-16) break;
  }
  return {fx, x};
}

Eigen::VectorXd random_start(const FamilyOverlap& f, std::uint64_t seed, int index) {
  KeyedRng rng(seed, streams::kOptimizerStart, std::uint64_t(index));
  Eigen::VectorXd x(f.dimension());
  for (Eigen::Index j = 0; j < x.size() / 2; ++j) {
    const BlochPoint p = rng.sphere_point();
    x[2 * j] = p.theta;
    x[2 * j + 1] = p.phi;
  }
  return x;
}

template <bool Parallel>
OverlapResult run_starts(const SymmetricState& psi, const DegeneracyConfiguration& family,
                         const OptimizerConfig& cfg) {
  cfg.validate();
  const FamilyOverlap f(psi, family);
  std::vector<LocalResult> results;
  int n_starts = cfg.n_starts;

  for (;;) {
    const int begin = int(results.size());
    results.resize(std::size_t(n_starts), LocalResult{0.0, {}});
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (int i = begin; i < n_starts; ++i)
        results[std::size_t(i)] = local_ascent(f, random_start(f, cfg.seed, i), cfg);
    } else {
      for (int i = begin; i < n_starts; ++i)
        results[std::size_t(i)] = local_ascent(f, random_start(f, cfg.seed, i), cfg);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
      if (results[i].value > results[best].value) best = i;
    int agreeing = 0;
    for (const auto& r : results)
      if (r.value >= results[best].value - cfg.agreement_tol) ++agreeing;

    if (agreeing >= cfg.min_agreeing || n_starts >= cfg.max_starts) {
      OverlapResult out;
      out.alpha = std::clamp(results[best].value, 0.0, 1.0);
      out.argmax = f.constellation(results[best].x);
      out.confidence = agreeing;
      out.starts_used = n_starts;
      return out;
    }
    n_starts = std::min(2 * n_starts, cfg.max_starts);
  }
}

}  // namespace

LocalResult local_ascent(const FamilyOverlap& f, Eigen::VectorXd x0, const OptimizerConfig& cfg) {
  return cfg.method == AscentMethod::gradient ? bfgs(f, std::move(x0), cfg)
                                              : nelder_mead(f, std::move(x0), cfg);
}

OverlapResult max_overlap(const SymmetricState& psi, const DegeneracyConfiguration& family,
                          const OptimizerConfig& cfg) {
  return run_starts<true>(psi, family, cfg);
}

OverlapResult max_overlap_serial(const SymmetricState& psi, const DegeneracyConfiguration& family,
                                 const OptimizerConfig& cfg) {
  return run_starts<false>(psi, family, cfg);
}

// ---------------------------------------------------------------------------
// Witnesses

Witness build_witness(const SymmetricState& psi, const DegeneracyConfiguration& family,
                      const OptimizerConfig& cfg) {
  if (family.n() != psi.n_qubits())
    throw DomainError("family " + family.to_string() + " is not a partition of N = " +
                      std::to_string(psi.n_qubits()));
  const bool vacuous = in_closure(family, classify_pure(psi));
  OverlapResult r = max_overlap(psi, family, cfg);
  return Witness{psi, family, r.alpha, std::move(r.argmax), r.confidence, vacuous};
}

double evaluate(const Witness& w, const SymmetricDensityMatrix& rho) {
  if (rho.n_qubits() != w.reference_state.n_qubits())
    throw DomainError("evaluate: witness and state have different N");
  const CVector& psi = w.reference_state.amplitudes();
  return w.alpha - psi.dot(rho.entries() * psi).real();
}

std::vector<Witness> witness_battery(const SymmetricState& psi, const OptimizerConfig& cfg) {
  auto families = enumerate_partitions(psi.n_qubits());
  std::stable_sort(families.begin(), families.end(),
                   [](const auto& a, const auto& b) { return a.diversity() > b.diversity(); });
  std::vector<Witness> out;
  for (const auto& d : families)
    if (d.diversity() != psi.n_qubits()) out.push_back(build_witness(psi, d, cfg));
  return out;
}

}  // namespace symfam
