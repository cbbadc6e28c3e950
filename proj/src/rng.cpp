#include "qkam/rng.hpp"

#include <cmath>
#include <complex>

namespace qkam {

namespace {

// SplitMix64 step, used only to mix (seed, stream) into engine seeds.
uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
  uint64_t s = seed;
  uint64_t a = splitmix64(s);
  s ^= stream * 0xda942042e4dd58b5ULL;
  uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                    static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
  engine_.seed(seq);
}

Rng Rng::split(uint64_t tag) const { return Rng(seed_, stream_ * 0x100000001b3ULL + tag + 1); }

double Rng::next_uniform() {
  // 53 mantissa bits; shifted away from exactly 0 so log() below is safe.
  const uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> Rng::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return {re, im};
}

}  // namespace qkam
