#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace strongties {

// xoshiro256** seeded through splitmix64 (Blackman & Vigna, public domain).
// Hand-rolled instead of <random> engines + distributions so that draws are
// bit-identical across platforms and standard libraries, which the replay
// contract requires.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for run `run_index` under a master seed. Splitting
  // Monte Carlo work across per-run streams makes results independent of
  // the degree of parallelism.
  static Rng for_run(std::uint64_t seed, std::uint64_t run_index);

  std::uint64_t next_u64();

  // Uniform in [0,1), 53-bit resolution.
  double next_double();

  // Uniform integer in [0, bound), unbiased via rejection sampling.
  std::uint64_t next_below(std::uint64_t bound);

  bool next_bool();

  // Fisher-Yates. std::shuffle is implementation-defined; this is not.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace strongties
