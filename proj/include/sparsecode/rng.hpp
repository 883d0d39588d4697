#ifndef SPARSECODE_RNG_HPP
#define SPARSECODE_RNG_HPP

#include <cstdint>

#include "sparsecode/bitvec.hpp"

namespace sparsecode {

// SplitMix64 finalizer; also used as the mixing function for stream keys.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Independent stream for (seed, index). Results depend only on the pair, so
// trial ranges can be partitioned across threads without changing any draw.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

inline BitVector random_subset(std::size_t length, SplitMix64 &gen) {
    BitVector v(length);
    for (std::size_t i = 0; i * 64 < length; ++i) {
        std::uint64_t w = gen.next();
        const std::size_t hi = std::min<std::size_t>(length - i * 64, 64);
        if (hi < 64)
            w &= (std::uint64_t{1} << hi) - 1;
        for (std::size_t b = 0; b < hi; ++b)
            if ((w >> b) & 1u)
                v.set(i * 64 + b, true);
    }
    return v;
}

} // namespace sparsecode

#endif
