#pragma once

#include <cstdint>
#include <string_view>

namespace isrl {

// Counter-based pseudo-random generator. Every draw is a pure function of
// (seed, stream, counter), so independent streams can be consumed in any
// order (or in parallel) and still reproduce bit-identically.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    CounterRng(std::uint64_t seed, std::string_view stream_name)
        : CounterRng(seed, stream_id(stream_name)) {}

    /// FNV-1a hash of a stream label.
    static std::uint64_t stream_id(std::string_view name);

    /// Derived stream: same seed, stream mixed with an index (e.g. per-sample).
    CounterRng substream(std::uint64_t index) const;

    std::uint64_t bits(std::uint64_t counter) const;

    /// Uniform in [0, 1).
    double uniform(std::uint64_t counter) const;
    double uniform(std::uint64_t counter, double lo, double hi) const;

    /// Uniform integer in [0, n), n >= 1.
    std::uint32_t uniform_int(std::uint64_t counter, std::uint32_t n) const;

    bool bernoulli(std::uint64_t counter, double p) const;

    /// Standard normal via Box-Muller; consumes two internal sub-draws.
    double normal(std::uint64_t counter) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Convenience adapter when draws are naturally sequential (weight init,
// shuffles). Still deterministic: it is just a CounterRng with a cursor.
class RngSequence {
public:
    explicit RngSequence(CounterRng rng) : rng_(rng) {}
    RngSequence(std::uint64_t seed, std::string_view stream) : rng_(seed, stream) {}

    double uniform() { return rng_.uniform(next_++); }
    double uniform(double lo, double hi) { return rng_.uniform(next_++, lo, hi); }
    std::uint32_t uniform_int(std::uint32_t n) { return rng_.uniform_int(next_++, n); }
    bool bernoulli(double p) { return rng_.bernoulli(next_++, p); }
    double normal() { return rng_.normal(next_++); }

private:
    CounterRng rng_;
    std::uint64_t next_ = 0;
};

} // namespace isrl
