#pragma once

#include <cmath>
#include <cstdint>

namespace wiretap {

// Counter-based pseudorandom stream built on the splitmix64 mixer
// (Vigna, public domain). Every draw is a pure function of the stream
// state, so simulations are reproducible across platforms and across
// any partitioning of trials onto worker threads: each trial derives
// its own stream from (seed, salts..., trial index) and never shares
// generator state with another trial.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derives an independent stream from a seed and up to three salts.
    // Each component is passed through the full 64-bit avalanche before
    // being combined, so neighbouring ids give unrelated streams.
    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
        std::uint64_t s = mix64(seed);
        s = mix64(s ^ (0x9E3779B97F4A7C15ULL + mix64(a)));
        s = mix64(s ^ (0xC2B2AE3D27D4EB4FULL + mix64(b)));
        s = mix64(s ^ (0x165667B19E3779F9ULL + mix64(c)));
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // uniform in [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, n); unbiased via rejection
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // standard normal via Box-Muller (pair cached); avoids the
    // implementation-defined std::normal_distribution so that streams
    // are identical on every platform
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0,1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    std::uint64_t random_bit() { return next_u64() >> 63; }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wiretap
