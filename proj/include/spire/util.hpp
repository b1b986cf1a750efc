#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spire {

// Malformed user input or call-site precondition violation (CLI exit code 2).
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated numerical contract: solver residuals, size caps, iteration caps
// (CLI exit code 3).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic 64-bit generator (splitmix64, public domain construction).
// Used instead of std::mt19937_64 + distributions because the standard
// distributions are not specified bit-for-bit across standard libraries,
// and seeded artifacts (oracle dumps, trial records) must be byte-identical
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound); rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double canonical() { return double(next() >> 11) * 0x1.0p-53; }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::uint64_t state_;
};

// All user-facing floating-point output uses 9 significant digits.
std::string fmt9(double x);

// Worker count: env var SPIRE_THREADS (0 or unset = hardware concurrency),
// clamped to at least 1.
int thread_count();

// Runs fn(begin, end) over a partition of [0, n) into contiguous ranges, one
// per worker. fn must only write state owned by its range, so results are
// identical for every thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace spire
