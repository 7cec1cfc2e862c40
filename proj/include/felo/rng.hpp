#pragma once

#include "felo/common.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace felo {

// Stream tags for seed derivation. Every random decision in an experiment
// draws from a generator seeded by (root seed, tag, ...ids), so results do
// not depend on the order in which components consume randomness.
enum class Stream : std::uint64_t {
  Data = 1,
  Partition = 2,
  ModelInit = 3,
  Sampling = 4,
  LocalTrain = 5,
  CvaeInit = 6,
  CvaeTrain = 7,
  Generate = 8,
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes the root seed with a stream tag and up to three ids into one
/// sub-seed. Deterministic and order-sensitive.
std::uint64_t derive_seed(std::uint64_t root, Stream stream, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// Seeded generator with portable transforms. std::mt19937_64 output is
// fully specified by the standard; the distribution transforms below are
// hand-rolled because the std::*_distribution algorithms are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller.
  double normal();

  /// Gamma(alpha, 1) via Marsaglia-Tsang, with the Johnk boost for alpha < 1.
  double gamma(double alpha);

  /// Dirichlet(alpha * 1) over n components.
  std::vector<double> dirichlet(double alpha, int n);

  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace felo
