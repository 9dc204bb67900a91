#pragma once

#include <cstdint>

namespace conenet {

// Splittable counter-based generator (splitmix64 core). We avoid the
// std::uniform_* distributions so that identical seeds give identical
// streams on every platform; golden-file tests depend on that.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // Independent child stream; deterministic function of parent state and tag.
    Rng split(std::uint64_t tag) {
        Rng child(state_ ^ (0x5851f42d4c957f2dULL * (tag + 1)));
        child.next_u64();
        return child;
    }

  private:
    std::uint64_t state_;
};

} // namespace conenet
