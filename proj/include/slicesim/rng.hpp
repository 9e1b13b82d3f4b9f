#ifndef SLICESIM_RNG_HPP
#define SLICESIM_RNG_HPP

#include <cstdint>
#include <string_view>

namespace slicesim {

/// Deterministic, platform-independent random stream (xoshiro256++ core,
/// splitmix64 seeding). The standard-library distributions are avoided on
/// purpose: their output is implementation defined, and repeat runs of a
/// scenario must produce identical metrics.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_double();

  /// Uniform double in [low, high]; low == high returns that value.
  double uniform(double low, double high);

  /// Uniform integer in [low, high], both inclusive.
  int uniform_int(int low, int high);

  /// Gaussian via Box-Muller; one spare value is cached between calls.
  double normal(double mean, double sigma);

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent seed for a named purpose ("ground-truth",
/// "dither", ...) so that parallel consumers never share a stream.
std::uint64_t derive_stream(std::uint64_t master_seed, std::string_view purpose);

}  // namespace slicesim

#endif
