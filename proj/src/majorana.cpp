// Conversion between Dicke amplitudes and Majorana constellations.

#include "symfam/core.hpp"
#include "symfam/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace symfam {

namespace detail {

CVector symmetrized_product(int n_qubits, std::span<const ConstellationPoint> points) {
  // e holds the coefficients of prod (alpha_i + beta_i t), lowest power first.
  CVector e = CVector::Zero(n_qubits + 1);
  e[0] = 1.0;
  int degree = 0;
  for (const auto& p : points) {
    const Complex a = p.point.alpha(), b = p.point.beta();
    for (int rep = 0; rep < p.multiplicity; ++rep) {
      ++degree;
      for (int k = degree; k >= 1; --k) e[k] = a * e[k] + b * e[k - 1];
      e[0] *= a;
    }
  }
  for (int k = 0; k <= n_qubits; ++k) e[k] /= std::sqrt(binomial(n_qubits, k));
  return e;
}

}  // namespace detail

SymmetricState from_constellation(const Constellation& c) {
  CVector v = detail::symmetrized_product(c.n_qubits(), c.points());
  if (!(v.norm() >= 1e-14)) throw NumericalError("from_constellation: vanishing norm");
  return SymmetricState::normalized(c.n_qubits(), std::move(v));
}

namespace {

// Relative size below which a polynomial coefficient counts as zero when
// peeling off roots at w = 0 and w = infinity.
constexpr double kZeroCoefficient = 1e-12;
// Relative backward error accepted when collapsing a cluster of computed roots
// into one multiple root.
constexpr double kMultipleRootBackwardError = 1e-10;
// Single-linkage radius (chordal) used to form candidate root clusters.
constexpr double kClusterSearchRadius = 0.3;

using Poly = std::vector<Complex>;  // lowest power first

Complex horner(const Poly& p, Complex x) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {Complex(0.0)};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = double(i) * p[i];
  return d;
}

double norm1(const Poly& p) {
  double s = 0.0;
  for (auto c : p) s += std::abs(c);
  return s;
}

// Taylor coefficients of p around c: p(c + h) = sum_j out[j] h^j.
Poly taylor_shift(Poly p, Complex c) {
  const std::size_t n = p.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = n - 1; i > j; --i) p[i - 1] += c * p[i];
  return p;
}

std::vector<Complex> companion_roots(const Poly& p) {
  const int n = int(p.size()) - 1;
  if (n < 1) return {};
  if (n == 1) return {-p[0] / p[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalue solve failed");
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

// The Majorana polynomial in the two stereographic charts: w = tan(theta/2)e^{i phi}
// (north, |w| <= 1) and u = 1/w (south).
struct Charts {
  Poly north;
  Poly south;

  const Poly& pick(bool use_north) const { return use_north ? north : south; }
};

BlochPoint point_from_chart(Complex z, bool north) {
  const double r = std::abs(z);
  if (north) return BlochPoint::make(2.0 * std::atan(r), r == 0.0 ? 0.0 : std::arg(z));
  return BlochPoint::make(std::numbers::pi - 2.0 * std::atan(r), r == 0.0 ? 0.0 : -std::arg(z));
}

Complex chart_value(const BlochPoint& p, bool north) {
  const double half = p.theta / 2.0;
  if (north) return std::polar(std::tan(half), p.phi);
  return std::polar(std::tan(std::numbers::pi / 2.0 - half), -p.phi);
}

// Newton iteration on f with guard: a step is only taken if it reduces |f|.
Complex newton(const Poly& f, Complex z) {
  const Poly df = derivative(f);
  double fz = std::abs(horner(f, z));
  for (int it = 0; it < 60 && fz > 0.0; ++it) {
    const Complex d = horner(df, z);
    if (d == Complex(0.0)) break;
    const Complex next = z - horner(f, z) / d;
    const double fn = std::abs(horner(f, next));
    if (!(fn < fz)) break;
    const double step = std::abs(next - z);
    z = next;
    fz = fn;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) break;
  }
  return z;
}

struct RootPoint {
  BlochPoint point;
  Eigen::Vector3d xyz;
};

std::vector<std::vector<std::size_t>> single_linkage(const std::vector<RootPoint>& roots,
                                                     const std::vector<std::size_t>& members,
                                                     double radius) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> seen(members.size(), false);
  for (std::size_t s = 0; s < members.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> group{s};
    seen[s] = true;
    for (std::size_t q = 0; q < group.size(); ++q)
      for (std::size_t t = 0; t < members.size(); ++t)
        if (!seen[t] &&
            (roots[members[group[q]]].xyz - roots[members[t]].xyz).norm() < radius) {
          seen[t] = true;
          group.push_back(t);
        }
    for (auto& g : group) g = members[g];
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

class RootResolver {
 public:
  RootResolver(const Charts& charts, std::vector<RootPoint> roots)
      : charts_(charts), roots_(std::move(roots)) {}

  std::vector<ConstellationPoint> run() {
    std::vector<std::size_t> all(roots_.size());
    std::iota(all.begin(), all.end(), 0);
    for (auto& g : single_linkage(roots_, all, kClusterSearchRadius))
      resolve(g, kClusterSearchRadius);
    return std::move(out_);
  }

 private:
  void resolve(const std::vector<std::size_t>& group, double radius) {
    if (group.size() == 1) {
      out_.push_back({polish_simple(roots_[group[0]].point), 1});
      return;
    }
    if (auto merged = try_merge(group)) {
      out_.push_back({*merged, int(group.size())});
      return;
    }
    if (peel(group)) return;
    // Shrink the linkage radius until the group breaks apart.
    while (radius > 1e-12) {
      radius *= 0.5;
      auto parts = single_linkage(roots_, group, radius);
      if (parts.size() > 1) {
        for (auto& p : parts) resolve(p, radius);
        return;
      }
    }
    for (auto i : group) out_.push_back({polish_simple(roots_[i].point), 1});
  }

  // A simple root sitting inside the numerical spread of a high-multiplicity
  // cluster defeats single linkage. Look for the largest multiple root formed by
  // the k nearest neighbours of some seed root; resolve the leftovers afresh.
  bool peel(const std::vector<std::size_t>& group) {
    for (std::size_t k = group.size() - 1; k >= 2; --k) {
      for (auto seed : group) {
        std::vector<std::size_t> subset = group;
        std::stable_sort(subset.begin(), subset.end(), [&](std::size_t a, std::size_t b) {
          return (roots_[a].xyz - roots_[seed].xyz).norm() <
                 (roots_[b].xyz - roots_[seed].xyz).norm();
        });
        subset.resize(k);
        std::sort(subset.begin(), subset.end());
        if (try_peel(group, subset)) return true;
      }
    }
    return false;
  }

  bool try_peel(const std::vector<std::size_t>& group, const std::vector<std::size_t>& subset) {
    const auto merged = try_merge(subset);
    if (!merged) return false;
    out_.push_back({*merged, int(subset.size())});
    std::vector<std::size_t> rest;
    std::set_difference(group.begin(), group.end(), subset.begin(), subset.end(),
                        std::back_inserter(rest));
    for (auto& g : single_linkage(roots_, rest, kClusterSearchRadius))
      resolve(g, kClusterSearchRadius);
    return true;
  }

  BlochPoint polish_simple(const BlochPoint& p) const {
    const bool north = p.theta <= std::numbers::pi / 2.0;
    return point_from_chart(newton(charts_.pick(north), chart_value(p, north)), north);
  }

  // Accepts the group as one root of multiplicity m if the polynomial is within
  // a tiny relative backward error of having an m-fold root at the refined center.
  std::optional<BlochPoint> try_merge(const std::vector<std::size_t>& group) const {
    const std::size_t m = group.size();
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (auto i : group) mean += roots_[i].xyz;
    const bool north = mean.z() >= 0.0;
    const Poly& p = charts_.pick(north);
    if (p.size() <= m) return std::nullopt;

    Complex center = 0.0;
    double spread = 0.0;
    for (auto i : group) center += chart_value(roots_[i].point, north);
    center /= double(m);
    for (auto i : group) spread = std::max(spread, std::abs(chart_value(roots_[i].point, north) - center));

    Poly g = p;
    for (std::size_t d = 1; d < m; ++d) g = derivative(g);
    const Complex refined = newton(g, center);
    // The mean of a perturbed multiple root is accurate to first order, so a
    // genuine cluster barely moves. A large move means Newton found a zero of
    // the derivative belonging to some other root.
    if (std::abs(refined - center) > 0.25 * spread + 1e-12 * (1.0 + std::abs(center)))
      return std::nullopt;
    {
      const Eigen::Vector3d c3 = point_from_chart(refined, north).cartesian();
      double reach = 0.0;
      for (auto i : group) reach = std::max(reach, (roots_[i].xyz - c3).norm());
      for (std::size_t i = 0; i < roots_.size(); ++i)
        if (!std::binary_search(group.begin(), group.end(), i) &&
            (roots_[i].xyz - c3).norm() < reach)
          return std::nullopt;
    }

    const Poly t = taylor_shift(p, refined);
    double backward = 0.0;
    const double lever = 1.0 + std::abs(refined);
    for (std::size_t j = 0; j < m; ++j) backward += std::abs(t[j]) * std::pow(lever, double(j));
    if (backward > kMultipleRootBackwardError * norm1(p)) return std::nullopt;
    return point_from_chart(refined, north);
  }

  const Charts& charts_;
  std::vector<RootPoint> roots_;
  std::vector<ConstellationPoint> out_;
};

// Gauss-Newton fit of lambda * prod_j f_j(w)^{m_j} to the full Majorana
// polynomial with the multiplicity pattern held fixed. Each factor lives in the
// chart of its point: f = w - z (north) or f = u w - 1 (south). Multiple roots
// are well conditioned under this parametrization, unlike the raw eigenvalues.
std::vector<ConstellationPoint> refine_structure(const Poly& target,
                                                 std::vector<ConstellationPoint> pts) {
  const std::size_t d = pts.size();
  const std::size_t len = target.size();
  std::vector<bool> north(d);
  Eigen::VectorXcd z(d);
  for (std::size_t j = 0; j < d; ++j) {
    north[j] = pts[j].point.theta <= std::numbers::pi / 2.0;
    z[j] = chart_value(pts[j].point, north[j]);
  }
  auto factor = [&](std::size_t j, Complex zj) -> Poly {
    return north[j] ? Poly{-zj, 1.0} : Poly{-1.0, zj};
  };
  auto multiply = [&](const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k) c[i + k] += a[i] * b[k];
    return c;
  };
  auto power = [&](const Poly& f, int m) {
    Poly r{1.0};
    for (int i = 0; i < m; ++i) r = multiply(r, f);
    return r;
  };
  auto pad = [&](Poly p) {
    p.resize(len, 0.0);
    return p;
  };
  auto product = [&](const Eigen::VectorXcd& zz, std::size_t skip, int skip_drop) {
    Poly r{1.0};
    for (std::size_t j = 0; j < d; ++j)
      r = multiply(r, power(factor(j, zz[j]), pts[j].multiplicity - (j == skip ? skip_drop : 0)));
    return pad(r);
  };
  Eigen::Map<const Eigen::VectorXcd> t(target.data(), Eigen::Index(len));

  auto fit_lambda = [&](const Eigen::VectorXcd& zz) {
    const Poly base = product(zz, d, 0);
    Eigen::Map<const Eigen::VectorXcd> b(base.data(), Eigen::Index(len));
    return std::pair{b.dot(t) / b.squaredNorm(), Eigen::VectorXcd(b)};
  };
  auto [lambda, base] = fit_lambda(z);
  double resid = (lambda * base - t).norm();

  for (int it = 0; it < 30; ++it) {
    Eigen::MatrixXcd jac(len, d + 1);
    for (std::size_t j = 0; j < d; ++j) {
      Poly dj = product(z, j, 1);
      const Poly df = north[j] ? Poly{-1.0} : Poly{0.0, 1.0};
      dj = pad(multiply(dj, df));
      for (std::size_t i = 0; i < len; ++i)
        jac(Eigen::Index(i), Eigen::Index(j)) = lambda * double(pts[j].multiplicity) * dj[i];
    }
    jac.col(Eigen::Index(d)) = base;
    const Eigen::VectorXcd step = jac.colPivHouseholderQr().solve(t - lambda * base);
    if (!step.allFinite()) break;
    const Eigen::VectorXcd z_next = z + step.head(Eigen::Index(d));
    auto [l_next, b_next] = fit_lambda(z_next);
    const double r_next = (l_next * b_next - t).norm();
    if (!(r_next < resid)) break;
    const double moved = step.head(Eigen::Index(d)).cwiseAbs().maxCoeff();
    z = z_next;
    lambda = l_next;
    base = b_next;
    resid = r_next;
    if (moved <= 1e-15) break;
  }
  for (std::size_t j = 0; j < d; ++j) pts[j].point = point_from_chart(z[j], north[j]);
  return pts;
}

// Single-linkage merge of points closer than tol; representative is the
// multiplicity-weighted spherical centroid.
std::vector<ConstellationPoint> merge_coincident(const std::vector<ConstellationPoint>& pts,
                                                 double tol) {
  std::vector<RootPoint> rp;
  rp.reserve(pts.size());
  for (const auto& p : pts) rp.push_back({p.point, p.point.cartesian()});
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<ConstellationPoint> out;
  for (const auto& g : single_linkage(rp, all, tol)) {
    if (g.size() == 1) {
      out.push_back(pts[g[0]]);
      continue;
    }
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    int mult = 0;
    for (auto i : g) {
      acc += pts[i].multiplicity * rp[i].xyz;
      mult += pts[i].multiplicity;
    }
    const BlochPoint rep = acc.norm() > 0.0 ? BlochPoint::from_cartesian(acc) : pts[g[0]].point;
    out.push_back({rep, mult});
  }
  return out;
}

}  // namespace

Constellation to_constellation(const SymmetricState& s, double coincidence_tol) {
  if (!(coincidence_tol > 0.0 && coincidence_tol < 0.5))
    throw DomainError("coincidence_tol must lie in (0, 0.5)");
  if (std::abs(s.amplitudes().squaredNorm() - 1.0) > kNormTolerance)
    throw DomainError("to_constellation: state is not normalized");

  const int n = s.n_qubits();
  // R(w) = sum_k (-1)^k e_k w^(N-k); coefficient of w^p sits at index p.
  Poly r(n + 1);
  for (int k = 0; k <= n; ++k) {
    const Complex e = s[k] * std::sqrt(binomial(n, k));
    r[n - k] = (k % 2 == 0) ? e : -e;
  }
  double scale = 0.0;
  for (auto c : r) scale = std::max(scale, std::abs(c));
  const double cut = kZeroCoefficient * scale;

  int top = n;
  while (top > 0 && std::abs(r[top]) <= cut) --top;
  int bottom = 0;
  while (bottom < top && std::abs(r[bottom]) <= cut) ++bottom;
  const int at_infinity = n - top;  // south pole, |1>
  const int at_zero = bottom;       // north pole, |0>

  // Peeled pole roots still take part in clustering and refinement against the
  // full polynomial, so a multiple root close to (but not at) a pole is not split.
  Charts charts;
  charts.north = r;
  charts.south.assign(r.rbegin(), r.rend());

  std::vector<RootPoint> roots;
  const Poly reduced(r.begin() + bottom, r.begin() + top + 1);
  for (Complex z : companion_roots(reduced)) {
    const BlochPoint p = point_from_chart(z, true);
    roots.push_back({p, p.cartesian()});
  }
  const BlochPoint north_pole = BlochPoint::make(0.0, 0.0);
  const BlochPoint south_pole = BlochPoint::make(std::numbers::pi, 0.0);
  for (int i = 0; i < at_zero; ++i) roots.push_back({north_pole, north_pole.cartesian()});
  for (int i = 0; i < at_infinity; ++i) roots.push_back({south_pole, south_pole.cartesian()});

  std::vector<ConstellationPoint> points = RootResolver(charts, std::move(roots)).run();
  points = refine_structure(r, std::move(points));
  return Constellation(n, merge_coincident(points, coincidence_tol));
}

}  // namespace symfam
