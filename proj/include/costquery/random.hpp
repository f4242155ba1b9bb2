#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace costquery {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

// Seeded generator with a platform-stable stream. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// distributions are implemented here because the std:: ones are not
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

  /// Independent generator for a numbered sub-stream.
  Rng split(std::uint64_t stream) const { return Rng(mix_seed(seed_ ^ mix_seed(stream + 1))); }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double low, double high);
  /// Uniform integer in [low, high].
  std::uint64_t uniform_int(std::uint64_t low, std::uint64_t high);
  double normal();
  double gamma(double shape);
  std::vector<double> dirichlet(std::size_t n, double concentration);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace costquery
