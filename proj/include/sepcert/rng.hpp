#ifndef SEPCERT_RNG_HPP
#define SEPCERT_RNG_HPP

#include <cstdint>

namespace sepcert {

/// Deterministic 64-bit generator (splitmix64). All sampling in the
/// library flows through this so identical seeds give identical runs on
/// every platform; the standard library distributions are not used because
/// their outputs are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 1) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound), bias-free by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace sepcert

#endif
