#include "sparsecode/alpha.hpp"

#include <charconv>
#include <numeric>

namespace sparsecode {

namespace {

// Keeps q*wt and p*wt inside uint64 for any length the enumeration caps admit.
constexpr std::uint64_t kMaxDenominator = (std::uint64_t{1} << 31) - 1;

std::uint64_t parse_u64(std::string_view text, const char *what) {
    std::uint64_t value = 0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw Error(Errc::parse_error,
                    std::string("invalid ") + what + " in alpha: '" +
                        std::string(text) + "'");
    return value;
}

} // namespace

Alpha::Alpha(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0)
        throw Error(Errc::domain_error, "alpha denominator must be positive");
    if (num_ > den_)
        throw Error(Errc::domain_error, "alpha must lie in [0, 1]");
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (den_ > kMaxDenominator)
        throw Error(Errc::domain_error,
                    "alpha denominator too large (max 2^31 - 1 after reduction)");
}

Alpha Alpha::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Alpha(parse_u64(text, "numerator"), 1);
    }
    return Alpha(parse_u64(text.substr(0, slash), "numerator"),
                 parse_u64(text.substr(slash + 1), "denominator"));
}

std::string Alpha::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace sparsecode
