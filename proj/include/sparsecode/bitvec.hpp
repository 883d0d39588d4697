#ifndef SPARSECODE_BITVEC_HPP
#define SPARSECODE_BITVEC_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsecode/error.hpp"

namespace sparsecode {

inline int popcount64(std::uint64_t x) noexcept { return std::popcount(x); }

// Branch-free SWAR fallback; kept alongside the builtin so the two can be
// cross-checked.
constexpr int popcount64_portable(std::uint64_t x) noexcept {
    x = x - ((x >> 1) & 0x5555555555555555ULL);
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
    return static_cast<int>((x * 0x0101010101010101ULL) >> 56);
}

// Length-n vector over GF(2), packed little-endian into 64-bit words:
// coordinate i lives in bit (i % 64) of word (i / 64). Bits at positions
// >= length are kept zero.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    // "1011": coordinate 1 is the leftmost character.
    static BitVector from_string(std::string_view bits);
    // 0-based coordinate indices.
    static BitVector from_indices(std::size_t length,
                                  std::span<const std::size_t> indices);
    static BitVector ones(std::size_t length);

    std::size_t length() const noexcept { return len_; }

    bool get(std::size_t i) const {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }
    void set(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    std::size_t weight() const noexcept;
    bool is_zero() const noexcept;

    // wt(this AND other): projection weight without a temporary.
    std::size_t and_weight(const BitVector &other) const;
    // true iff this AND other is nonzero.
    bool intersects(const BitVector &other) const;

    void xor_with(const BitVector &other);

    std::optional<std::size_t> first_set_bit() const noexcept;
    std::vector<std::size_t> set_indices() const;
    std::string to_string() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const BitVector &, const BitVector &) = default;
    // Total order (length, then coordinates from 1 up); used for canonical
    // labels and set-keyed containers.
    std::strong_ordering operator<=>(const BitVector &other) const noexcept;

  private:
    void check_same_length(const BitVector &other) const;

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t weight(const BitVector &v) noexcept;
BitVector add(const BitVector &u, const BitVector &v);
std::size_t project_weight(const BitVector &c, const BitVector &mask);

} // namespace sparsecode

#endif
