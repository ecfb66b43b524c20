#include "phasekit/rng.h"

namespace phasekit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter) : key_(splitmix64_mix(seed)), counter_(counter) {
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
    return splitmix64_mix(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform_at(std::uint64_t counter) const noexcept {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
    return CounterRng(KeyTag{}, splitmix64_mix(key_ ^ splitmix64_mix(stream + kGolden)));
}

}  // namespace phasekit
