#pragma once

#include <cstdint>
#include <random>

namespace symfam {

struct BlochPoint;

/// Counter-keyed generator: the stream for (seed, stream, index) does not
/// depend on how many other streams were consumed before it, so independent
/// draws can be produced in any order or concurrently.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
  KeyedRng(std::uint64_t seed, std::uint64_t index) : KeyedRng(seed, 0, index) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  double exponential();
  std::uint64_t below(std::uint64_t n);  // uniform integer in [0, n)

  /// Uniform with respect to area on the unit sphere.
  BlochPoint sphere_point();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// Stream identifiers used by the library; kept distinct so that e.g. weight
// draws never alias constellation draws for the same (seed, index).
namespace streams {
inline constexpr std::uint64_t kOptimizerStart = 1;
inline constexpr std::uint64_t kMixtureTerm = 2;
inline constexpr std::uint64_t kMixtureWeight = 3;
inline constexpr std::uint64_t kPolarizer = 4;
inline constexpr std::uint64_t kRandomPure = 5;
inline constexpr std::uint64_t kBasisPoints = 6;
}  // namespace streams

}  // namespace symfam
