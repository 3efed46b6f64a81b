#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vecmap {

// Deterministic random stream. The engine is std::mt19937_64 seeded through
// std::seed_seq, both of which have fully specified output; the distribution
// transforms are written out here because the standard library ones are
// implementation-defined.
class Rng {
 public:
  // The stream is identified by a base seed plus any number of sub-stream ids,
  // so independent consumers can draw without disturbing each other.
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  int uniform_int(int n);
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via the Box-Muller transform.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vecmap
