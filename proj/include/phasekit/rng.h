#ifndef PHASEKIT_RNG_H
#define PHASEKIT_RNG_H

#include <cstdint>

namespace phasekit {

/// SplitMix64 in counter mode: draw i of a stream is a pure function of
/// (key, i), so disjoint counter ranges can be generated on different
/// threads and still concatenate to the sequential stream.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0);

    /// Raw 64-bit output for an absolute counter position.
    std::uint64_t at(std::uint64_t counter) const noexcept;
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_at(std::uint64_t counter) const noexcept;

    std::uint64_t next() noexcept {
        return at(counter_++);
    }
    double uniform() noexcept {
        return uniform_at(counter_++);
    }

    /// Independent stream derived from this one's key.
    CounterRng split(std::uint64_t stream) const noexcept;

    std::uint64_t counter() const noexcept {
        return counter_;
    }
    void seek(std::uint64_t counter) noexcept {
        counter_ = counter;
    }

   private:
    struct KeyTag {};
    CounterRng(KeyTag, std::uint64_t key) : key_(key), counter_(0) {
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

}  // namespace phasekit

#endif
