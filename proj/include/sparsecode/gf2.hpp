#ifndef SPARSECODE_GF2_HPP
#define SPARSECODE_GF2_HPP

#include <cstdint>
#include <iterator>
#include <vector>

#include "sparsecode/bitvec.hpp"

namespace sparsecode {

// Enumeration guards. "for all codewords" loops refuse to run past 2^k with
// k above the cap, and subset censuses refuse 2^n past the length cap.
// Exceeding a cap is a hard error, never silent sampling.
inline constexpr std::size_t kDefaultMaxDimension = 28;
inline constexpr std::size_t kDefaultMaxLength = 28;
// Subset and codeword indices are carried in 64-bit integers.
inline constexpr std::size_t kHardEnumerationLimit = 62;

struct Gf2Matrix {
    std::size_t columns = 0;
    std::vector<BitVector> rows;

    Gf2Matrix() = default;
    Gf2Matrix(std::size_t columns, std::vector<BitVector> rows);
};

struct RowReduction {
    std::vector<BitVector> basis;     // reduced row-echelon rows
    std::vector<std::size_t> pivots;  // ascending, one per basis row
    std::size_t rank = 0;
};

// Deterministic RREF: pivot is always the lowest-index leading column. The
// result depends only on the row span, which makes coset labels and all
// downstream tie-breaks reproducible.
RowReduction row_reduce(const Gf2Matrix &m);

// Canonical coset representative: the input reduced modulo the basis, then
// restricted to the n-k non-pivot columns. Equal labels iff the difference
// is a codeword; comparable as raw bits.
struct CosetLabel {
    BitVector canonical;
    friend bool operator==(const CosetLabel &, const CosetLabel &) = default;
    auto operator<=>(const CosetLabel &other) const noexcept {
        return canonical <=> other.canonical;
    }
};

class LinearCode;

// Streams all 2^k codewords in Gray order over basis combinations: the
// codeword at position i is the XOR of the basis rows selected by
// gray(i) = i ^ (i >> 1), so each step flips exactly one basis row.
class CodewordIterator {
  public:
    using value_type = BitVector;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    CodewordIterator(const LinearCode *code, std::uint64_t index);

    const BitVector &operator*() const noexcept { return current_; }
    const BitVector *operator->() const noexcept { return &current_; }
    CodewordIterator &operator++();

    friend bool operator==(const CodewordIterator &a,
                           const CodewordIterator &b) noexcept {
        return a.index_ == b.index_;
    }

    std::uint64_t index() const noexcept { return index_; }

  private:
    const LinearCode *code_;
    std::uint64_t index_;
    BitVector current_;
};

class CodewordRange {
  public:
    CodewordRange(const LinearCode *code, std::uint64_t first,
                  std::uint64_t last)
        : code_(code), first_(first), last_(last) {}

    CodewordIterator begin() const { return {code_, first_}; }
    CodewordIterator end() const { return {code_, last_}; }
    std::uint64_t size() const noexcept { return last_ - first_; }

  private:
    const LinearCode *code_;
    std::uint64_t first_;
    std::uint64_t last_;
};

class LinearCode {
  public:
    explicit LinearCode(Gf2Matrix generators);
    static LinearCode zero(std::size_t length);

    std::size_t length() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const Gf2Matrix &generators() const noexcept { return generators_; }
    const std::vector<BitVector> &basis() const noexcept { return basis_; }
    const std::vector<std::size_t> &pivots() const noexcept { return pivots_; }

    // v mod the basis: zero at every pivot column afterwards.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector &v) const;
    CosetLabel coset_label(const BitVector &v) const;

    // Every coordinate appears in the support of some codeword.
    bool is_nondegenerate() const;

    // XOR of the basis rows selected by gray(index); entry point for
    // partitioned parallel enumeration.
    BitVector codeword_at(std::uint64_t index) const;

    // All 2^k codewords; throws DIMENSION_TOO_LARGE past the cap.
    CodewordRange codewords(std::size_t max_dimension = kDefaultMaxDimension) const;
    // Sub-range [first, last) of the same Gray order.
    CodewordRange codewords_slice(std::uint64_t first, std::uint64_t last,
                                  std::size_t max_dimension = kDefaultMaxDimension) const;

  private:
    std::size_t n_ = 0;
    Gf2Matrix generators_;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

// Throws DIMENSION_TOO_LARGE unless 2^dimension enumerations are allowed.
void check_dimension_cap(std::size_t dimension, std::size_t max_dimension);
// Throws LENGTH_TOO_LARGE unless 2^length subset enumerations are allowed.
void check_length_cap(std::size_t length, std::size_t max_length);

} // namespace sparsecode

#endif
