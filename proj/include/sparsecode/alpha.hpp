#ifndef SPARSECODE_ALPHA_HPP
#define SPARSECODE_ALPHA_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "sparsecode/error.hpp"

namespace sparsecode {

// Exact rational threshold p/q in [0, 1]. Every sparsifier decision is the
// integer comparison q*wt(c_S) >= p*wt(c); no floating point is involved.
class Alpha {
  public:
    Alpha(std::uint64_t num, std::uint64_t den);

    // Accepts "p/q" or a bare integer ("0", "1").
    static Alpha parse(std::string_view text);

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }

    // q*wt(c_S) >= p*wt(c)
    bool meets_lower(std::uint64_t projected_weight,
                     std::uint64_t full_weight) const noexcept {
        return den_ * projected_weight >= num_ * full_weight;
    }

    Alpha complement() const { return Alpha(den_ - num_, den_); }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_one() const noexcept { return num_ == den_; }
    bool is_half() const noexcept { return 2 * num_ == den_; }

    double value() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const;

    friend bool operator==(const Alpha &, const Alpha &) = default;

  private:
    std::uint64_t num_;
    std::uint64_t den_;
};

} // namespace sparsecode

#endif
