#include "symfam/random.hpp"

#include "symfam/core.hpp"

#include <cmath>
#include <numbers>

namespace symfam {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : engine_(mix_key(seed, stream, index)) {}

double KeyedRng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double KeyedRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double KeyedRng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double KeyedRng::exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

std::uint64_t KeyedRng::below(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

BlochPoint KeyedRng::sphere_point() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return BlochPoint::make(std::acos(z), phi);
}

}  // namespace symfam
