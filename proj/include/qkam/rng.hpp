#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qkam {

// Seedable 64-bit stream with split-stream semantics: (seed, stream) pairs
// give statistically independent sequences. Gaussians via Box-Muller on
// uniforms built directly from the raw 64-bit output, so the sequence is a
// pure function of (seed, stream) and the engine.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  // Split off an independent stream keyed by tag; does not advance *this.
  Rng split(uint64_t tag) const;

  uint64_t next_u64() { return engine_(); }
  double next_uniform();         // in (0, 1)
  double next_gaussian();        // standard normal
  std::complex<double> next_complex_gaussian();  // re, im ~ N(0,1)

 private:
  std::mt19937_64 engine_;
  uint64_t seed_, stream_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace qkam
