#include "symfam/sampler.hpp"

#include "symfam/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace symfam {

namespace {

constexpr double kMinSeparation = 1e-6;
constexpr int kMaxRedraws = 1000;
constexpr int kBlock = 256;

}  // namespace

void validate(const OrientationDistribution& dist) {
  if (const auto* cap = std::get_if<SphericalCap>(&dist))
    if (!(cap->angular_radius > 0.0 && cap->angular_radius <= std::numbers::pi))
      throw DomainError("spherical cap radius must lie in (0, pi]");
}

BlochPoint sample_orientation(const OrientationDistribution& dist, KeyedRng& rng) {
  if (std::holds_alternative<UniformSphere>(dist)) return rng.sphere_point();
  const auto& cap = std::get<SphericalCap>(dist);
  // Area-uniform on the cap around +z, then rotated onto the cap center.
  const double z = rng.uniform(std::cos(cap.angular_radius), 1.0);
  const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const Eigen::Vector3d c = cap.center.cartesian();
  const Eigen::Vector3d helper = std::abs(c.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d u = c.cross(helper).normalized();
  const Eigen::Vector3d v = c.cross(u);
  return BlochPoint::from_cartesian(z * c + r * std::cos(az) * u + r * std::sin(az) * v);
}

Constellation sample_constellation(const DegeneracyConfiguration& family,
                                   const OrientationDistribution& dist, KeyedRng& rng) {
  validate(dist);
  std::vector<ConstellationPoint> pts;
  int redraws = 0;
  for (int part : family.parts()) {
    for (;;) {
      const BlochPoint p = sample_orientation(dist, rng);
      bool clear = true;
      for (const auto& q : pts)
        if (chordal_distance(p, q.point) < kMinSeparation) clear = false;
      if (clear) {
        pts.push_back({p, part});
        break;
      }
      if (++redraws > kMaxRedraws)
        throw NumericalError("orientation distribution too narrow to draw distinct points");
    }
  }
  return Constellation(family.n(), std::move(pts));
}

SymmetricState sample_pure_in_family(const DegeneracyConfiguration& family,
                                     const OrientationDistribution& dist, KeyedRng& rng) {
  return from_constellation(sample_constellation(family, dist, rng));
}

SymmetricDensityMatrix sample_mixed_in_family(const SamplingSpec& spec, int n) {
  if (spec.family.n() != n)
    throw DomainError("family " + spec.family.to_string() + " is not a partition of N = " +
                      std::to_string(n));
  if (spec.n_terms < 1) throw DomainError("n_terms must be >= 1");
  validate(spec.orientation_distribution);

  const std::vector<DegeneracyConfiguration> choices =
      spec.include_descendants ? descendant_closure(spec.family)
                               : std::vector<DegeneracyConfiguration>{spec.family};

  std::vector<double> w(std::size_t(spec.n_terms));
  double total = 0.0;
  for (int t = 0; t < spec.n_terms; ++t) {
    KeyedRng rng(spec.seed, streams::kMixtureWeight, std::uint64_t(t));
    w[std::size_t(t)] = rng.exponential();
    total += w[std::size_t(t)];
  }

  CMatrix acc = CMatrix::Zero(n + 1, n + 1);
  for (int t = 0; t < spec.n_terms; ++t) {
    KeyedRng rng(spec.seed, streams::kMixtureTerm, std::uint64_t(t));
    const auto& fam = choices[rng.below(choices.size())];
    const CVector v = sample_pure_in_family(fam, spec.orientation_distribution, rng).amplitudes();
    acc += (w[std::size_t(t)] / total) * (v * v.adjoint());
  }
  acc /= acc.trace().real();
  return SymmetricDensityMatrix::from_entries(n, std::move(acc));
}

namespace {

CMatrix block_sum(const DegeneracyConfiguration& family, const OrientationDistribution& dist,
                  std::uint64_t seed, int begin, int end) {
  const int n = family.n();
  CMatrix acc = CMatrix::Zero(n + 1, n + 1);
  for (int i = begin; i < end; ++i) {
    KeyedRng rng(seed, streams::kPolarizer, std::uint64_t(i));
    const CVector v = sample_pure_in_family(family, dist, rng).amplitudes();
    acc.noalias() += v * v.adjoint();
  }
  return acc;
}

template <bool Parallel>
PolarizerEstimate polarizer(const DegeneracyConfiguration& family, const OrientationDistribution& dist,
                            int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("n_samples must be >= 1");
  validate(dist);
  const int n = family.n();

  // Blocks never straddle the midpoint, so both half sums come out of the
  // same block partials.
  const int mid = n_samples / 2;
  std::vector<std::pair<int, int>> ranges;
  for (int lo = 0; lo < mid; lo += kBlock) ranges.emplace_back(lo, std::min(lo + kBlock, mid));
  const std::size_t first_half_blocks = ranges.size();
  for (int lo = mid; lo < n_samples; lo += kBlock) ranges.emplace_back(lo, std::min(lo + kBlock, n_samples));

  std::vector<CMatrix> partial(ranges.size());
  const auto count = std::int64_t(ranges.size());
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < count; ++b)
      partial[std::size_t(b)] = block_sum(family, dist, seed, ranges[std::size_t(b)].first, ranges[std::size_t(b)].second);
  } else {
    for (std::int64_t b = 0; b < count; ++b)
      partial[std::size_t(b)] = block_sum(family, dist, seed, ranges[std::size_t(b)].first, ranges[std::size_t(b)].second);
  }

  CMatrix first = CMatrix::Zero(n + 1, n + 1), second = CMatrix::Zero(n + 1, n + 1);
  for (std::size_t b = 0; b < partial.size(); ++b) (b < first_half_blocks ? first : second) += partial[b];

  CMatrix total = first + second;
  total /= total.trace().real();
  std::optional<double> diag;
  if (mid > 0) diag = trace_distance(first / first.trace().real(), second / second.trace().real());
  return {SymmetricDensityMatrix::from_entries(n, std::move(total)), diag};
}

}  // namespace

PolarizerEstimate polarizer_mixture(const DegeneracyConfiguration& family,
                                    const OrientationDistribution& dist, int n_samples,
                                    std::uint64_t seed) {
  return polarizer<true>(family, dist, n_samples, seed);
}

PolarizerEstimate polarizer_mixture_serial(const DegeneracyConfiguration& family,
                                           const OrientationDistribution& dist, int n_samples,
                                           std::uint64_t seed) {
  return polarizer<false>(family, dist, n_samples, seed);
}

SymmetricState random_symmetric_pure(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("n_qubits must be >= 1");
  KeyedRng rng(seed, streams::kRandomPure, 0);
  CVector a(n + 1);
  for (auto& c : a) {
    const double re = rng.normal();
    c = Complex(re, rng.normal());
  }
  return SymmetricState::normalized(n, std::move(a));
}

}  // namespace symfam
