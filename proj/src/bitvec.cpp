#include "sparsecode/bitvec.hpp"

#include <algorithm>

namespace sparsecode {

const char *errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::length_mismatch: return "LENGTH_MISMATCH";
    case Errc::dimension_too_large: return "DIMENSION_TOO_LARGE";
    case Errc::length_too_large: return "LENGTH_TOO_LARGE";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::io_error: return "IO_ERROR";
    case Errc::domain_error: return "DOMAIN";
    case Errc::not_found: return "NOT_FOUND";
    case Errc::theorem_violation: return "THEOREM_VIOLATION";
    }
    return "UNKNOWN";
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i, true);
        else if (bits[i] != '0')
            throw Error(Errc::parse_error,
                        "bit string may contain only '0' and '1'");
    }
    return v;
}

BitVector BitVector::from_indices(std::size_t length,
                                  std::span<const std::size_t> indices) {
    BitVector v(length);
    for (std::size_t i : indices) {
        if (i >= length)
            throw Error(Errc::domain_error,
                        "coordinate index " + std::to_string(i + 1) +
                            " out of range for length " +
                            std::to_string(length));
        v.set(i, true);
    }
    return v;
}

BitVector BitVector::ones(std::size_t length) {
    BitVector v(length);
    for (auto &w : v.words_)
        w = ~std::uint64_t{0};
    if (length % 64 != 0 && !v.words_.empty())
        v.words_.back() &= (std::uint64_t{1} << (length % 64)) - 1;
    return v;
}

std::size_t BitVector::weight() const noexcept {
    std::size_t w = 0;
    for (std::uint64_t word : words_)
        w += static_cast<std::size_t>(popcount64(word));
    return w;
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::and_weight(const BitVector &other) const {
    check_same_length(other);
    std::size_t w = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        w += static_cast<std::size_t>(popcount64(words_[i] & other.words_[i]));
    return w;
}

bool BitVector::intersects(const BitVector &other) const {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

void BitVector::xor_with(const BitVector &other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
}

std::optional<std::size_t> BitVector::first_set_bit() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] != 0)
            return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return std::nullopt;
}

std::vector<std::size_t> BitVector::set_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w != 0) {
            out.push_back(wi * 64 +
                          static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

std::strong_ordering BitVector::operator<=>(const BitVector &other) const noexcept {
    if (auto c = len_ <=> other.len_; c != 0)
        return c;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (auto c = words_[i] <=> other.words_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

void BitVector::check_same_length(const BitVector &other) const {
    if (len_ != other.len_)
        throw Error(Errc::length_mismatch,
                    "vector lengths differ: " + std::to_string(len_) + " vs " +
                        std::to_string(other.len_));
}

std::size_t weight(const BitVector &v) noexcept { return v.weight(); }

BitVector add(const BitVector &u, const BitVector &v) {
    BitVector r = u;
    r.xor_with(v);
    return r;
}

std::size_t project_weight(const BitVector &c, const BitVector &mask) {
    return c.and_weight(mask);
}

} // namespace sparsecode
