#pragma once

#include <cstdint>

namespace bw {

// Seeded deterministic random stream (xoshiro256++ seeded via splitmix64).
// A (seed, stream) pair fully determines the draw sequence; distinct stream
// ids give statistically independent sequences. Single-owner: never share
// one instance across threads, derive children with child() instead.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Independent stream derived from this stream's identity (not its state).
    RandomStream child(std::uint64_t id) const;

    std::uint64_t next_u64();

    // uniform on [0, 1)
    double uniform();
    // uniform on (0, 1), never returns an endpoint
    double uniform_open();
    // uniform integer in [0, n)
    std::uint64_t uniform_below(std::uint64_t n);

    // standard normal (Box-Muller, second draw cached)
    double normal();

    // Gamma(shape, 1): Marsaglia-Tsang squeeze for shape >= 1, boosted by
    // u^(1/shape) for shape < 1. Requires shape > 0.
    double gamma(double shape);

  private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    std::uint64_t stream_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace bw
