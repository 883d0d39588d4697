#include "sparsecode/gf2.hpp"

#include <algorithm>
#include <bit>

namespace sparsecode {

Gf2Matrix::Gf2Matrix(std::size_t columns, std::vector<BitVector> rows)
    : columns(columns), rows(std::move(rows)) {
    for (const auto &row : this->rows)
        if (row.length() != columns)
            throw Error(Errc::length_mismatch,
                        "matrix row length " + std::to_string(row.length()) +
                            " does not match column count " +
                            std::to_string(columns));
}

RowReduction row_reduce(const Gf2Matrix &m) {
    RowReduction out;
    std::vector<BitVector> work = m.rows;
    std::size_t done = 0; // rows [0, done) are the basis so far
    for (std::size_t col = 0; col < m.columns && done < work.size(); ++col) {
        std::size_t pivot_row = done;
        while (pivot_row < work.size() && !work[pivot_row].get(col))
            ++pivot_row;
        if (pivot_row == work.size())
            continue;
        std::swap(work[done], work[pivot_row]);
        for (std::size_t r = 0; r < work.size(); ++r)
            if (r != done && work[r].get(col))
                work[r].xor_with(work[done]);
        out.pivots.push_back(col);
        ++done;
    }
    work.resize(done);
    out.basis = std::move(work);
    out.rank = done;
    return out;
}

LinearCode::LinearCode(Gf2Matrix generators)
    : n_(generators.columns), generators_(std::move(generators)) {
    RowReduction rr = row_reduce(generators_);
    basis_ = std::move(rr.basis);
    pivots_ = std::move(rr.pivots);
}

LinearCode LinearCode::zero(std::size_t length) {
    return LinearCode(Gf2Matrix(length, {}));
}

BitVector LinearCode::reduce(BitVector v) const {
    if (v.length() != n_)
        throw Error(Errc::length_mismatch,
                    "vector length " + std::to_string(v.length()) +
                        " does not match code length " + std::to_string(n_));
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (v.get(pivots_[i]))
            v.xor_with(basis_[i]);
    return v;
}

bool LinearCode::contains(const BitVector &v) const {
    return reduce(v).is_zero();
}

CosetLabel LinearCode::coset_label(const BitVector &v) const {
    BitVector reduced = reduce(v);
    // Pivot columns of the reduced vector are zero; keep the rest.
    BitVector canonical(n_ - basis_.size());
    std::size_t out = 0;
    std::size_t next_pivot = 0;
    for (std::size_t col = 0; col < n_; ++col) {
        if (next_pivot < pivots_.size() && pivots_[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        if (reduced.get(col))
            canonical.set(out, true);
        ++out;
    }
    return CosetLabel{std::move(canonical)};
}

bool LinearCode::is_nondegenerate() const {
    // A coordinate is covered iff some basis row is nonzero there.
    for (std::size_t col = 0; col < n_; ++col) {
        bool hit = false;
        for (const auto &row : basis_)
            if (row.get(col)) {
                hit = true;
                break;
            }
        if (!hit)
            return false;
    }
    return true;
}

BitVector LinearCode::codeword_at(std::uint64_t index) const {
    const std::uint64_t gray = index ^ (index >> 1);
    BitVector c(n_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if ((gray >> i) & 1u)
            c.xor_with(basis_[i]);
    return c;
}

CodewordRange LinearCode::codewords(std::size_t max_dimension) const {
    check_dimension_cap(dimension(), max_dimension);
    return {this, 0, std::uint64_t{1} << dimension()};
}

CodewordRange LinearCode::codewords_slice(std::uint64_t first,
                                          std::uint64_t last,
                                          std::size_t max_dimension) const {
    check_dimension_cap(dimension(), max_dimension);
    const std::uint64_t total = std::uint64_t{1} << dimension();
    if (first > last || last > total)
        throw Error(Errc::domain_error, "codeword slice out of range");
    return {this, first, last};
}

CodewordIterator::CodewordIterator(const LinearCode *code, std::uint64_t index)
    : code_(code), index_(index), current_(code->codeword_at(index)) {}

CodewordIterator &CodewordIterator::operator++() {
    ++index_;
    // gray(i-1) ^ gray(i) is the single bit at countr_zero(i).
    const int flip = std::countr_zero(index_);
    if (static_cast<std::size_t>(flip) < code_->basis().size())
        current_.xor_with(code_->basis()[static_cast<std::size_t>(flip)]);
    return *this;
}

void check_dimension_cap(std::size_t dimension, std::size_t max_dimension) {
    const std::size_t cap = std::min(max_dimension, kHardEnumerationLimit);
    if (dimension > cap)
        throw Error(Errc::dimension_too_large,
                    "code dimension " + std::to_string(dimension) +
                        " exceeds enumeration cap " + std::to_string(cap),
                    {{"dimension", std::to_string(dimension)},
                     {"cap", std::to_string(cap)}});
}

void check_length_cap(std::size_t length, std::size_t max_length) {
    const std::size_t cap = std::min(max_length, kHardEnumerationLimit);
    if (length > cap)
        throw Error(Errc::length_too_large,
                    "code length " + std::to_string(length) +
                        " exceeds subset enumeration cap " +
                        std::to_string(cap),
                    {{"length", std::to_string(length)},
                     {"cap", std::to_string(cap)}});
}

} // namespace sparsecode
