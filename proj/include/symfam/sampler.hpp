#pragma once

// Random pure and mixed symmetric states inside a prescribed family.
//
// Every draw is keyed by (seed, stream, index), so results do not depend on
// the order in which draws are generated.

#include "symfam/core.hpp"
#include "symfam/families.hpp"
#include "symfam/random.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace symfam {

struct UniformSphere {};

struct SphericalCap {
  BlochPoint center;
  double angular_radius;  // (0, pi]
};

using OrientationDistribution = std::variant<UniformSphere, SphericalCap>;

void validate(const OrientationDistribution& dist);

BlochPoint sample_orientation(const OrientationDistribution& dist, KeyedRng& rng);

/// diversity(D) independent points, the largest part on the first drawn
/// point; pairs closer than 1e-6 (chordal) are redrawn. Throws NumericalError
/// after 1000 redraws.
Constellation sample_constellation(const DegeneracyConfiguration& family,
                                   const OrientationDistribution& dist, KeyedRng& rng);

SymmetricState sample_pure_in_family(const DegeneracyConfiguration& family,
                                     const OrientationDistribution& dist, KeyedRng& rng);

struct SamplingSpec {
  DegeneracyConfiguration family;
  int n_terms = 1;
  bool include_descendants = false;
  OrientationDistribution orientation_distribution = UniformSphere{};
  std::uint64_t seed = 0;
};

/// Convex sum of n_terms projectors with weights uniform on the simplex.
/// With include_descendants each term's family is drawn uniformly from the
/// descendant closure of spec.family.
SymmetricDensityMatrix sample_mixed_in_family(const SamplingSpec& spec, int n_qubits);

struct PolarizerEstimate {
  SymmetricDensityMatrix rho;
  /// Trace distance between the averages over the first and second halves of
  /// the samples; absent for a single sample.
  std::optional<double> half_split_distance;
};

/// Monte Carlo average of n_samples projectors sampled in the family.
/// Samples are summed in fixed blocks, in parallel across blocks.
PolarizerEstimate polarizer_mixture(const DegeneracyConfiguration& family,
                                    const OrientationDistribution& dist, int n_samples,
                                    std::uint64_t seed);
/// Single-threaded reference; bit-identical to polarizer_mixture.
PolarizerEstimate polarizer_mixture_serial(const DegeneracyConfiguration& family,
                                           const OrientationDistribution& dist, int n_samples,
                                           std::uint64_t seed);

/// Normalized vector of N+1 independent standard complex Gaussians.
SymmetricState random_symmetric_pure(int n_qubits, std::uint64_t seed);

}  // namespace symfam
