// Deterministic pseudo-random stream (splitmix64). Seeded runs must
// reproduce bit-for-bit across platforms, so <random> engines and
// distributions are not used anywhere in the solver.
#pragma once

#include <cstdint>

namespace rcmp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  int uniform_int(int bound) {
    return static_cast<int>(uniform(static_cast<std::uint64_t>(bound)));
  }

  // Independent stream for worker `worker` of a run seeded with `seed`.
  static Rng for_worker(std::uint64_t seed, int worker) {
    Rng mixer(seed ^ (0x9e3779b97f4a7c15ULL *
                      (static_cast<std::uint64_t>(worker) + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace rcmp
