#pragma once

#include <cstdint>

namespace cauchy {

// Counter-based random stream: the k-th output is a pure function of
// (seed, stream, k), so substreams for bootstrap replicas or multi-start
// fits are reproducible regardless of the order they are consumed in.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_bits();
  // Uniform on the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cauchy
