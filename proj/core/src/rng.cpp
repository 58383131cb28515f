#include "isrl/rng.hpp"

#include <cmath>

namespace isrl {
namespace {

// SplitMix64 finalizer; full-period mixer with good avalanche behavior.
std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t CounterRng::stream_id(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

CounterRng CounterRng::substream(std::uint64_t index) const {
    return CounterRng(seed_, splitmix64(stream_ ^ splitmix64(index)));
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return splitmix64(splitmix64(seed_ ^ splitmix64(stream_)) ^ splitmix64(counter));
}

double CounterRng::uniform(std::uint64_t counter) const {
    // Top 53 bits -> double in [0, 1).
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
}

std::uint32_t CounterRng::uniform_int(std::uint64_t counter, std::uint32_t n) const {
    // Rejection-free scaling; bias is negligible for desk-scale n.
    return static_cast<std::uint32_t>(uniform(counter) * n);
}

bool CounterRng::bernoulli(std::uint64_t counter, double p) const {
    return uniform(counter) < p;
}

double CounterRng::normal(std::uint64_t counter) const {
    const std::uint64_t base = counter * 2;
    const double u1 = uniform(base);
    const double u2 = uniform(base + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), u1 < 1
    return r * std::cos(2.0 * M_PI * u2);
}

} // namespace isrl
