#ifndef SPARSECODE_BOUNDS_HPP
#define SPARSECODE_BOUNDS_HPP

#include <cstddef>
#include <optional>

namespace sparsecode {

// Binary entropy H(x) = x log2(1/x) + (1-x) log2(1/(1-x)), with
// H(0) = H(1) = 0 by continuity. Throws DOMAIN outside [0, 1].
double entropy(double x);

struct BoundsReport {
    std::size_t n = 0;
    std::size_t k = 0;
    double entropy_gap = 0.0;    // 1 - k/n
    double epsilon_closed = 0.0; // sqrt(ln2/2 * k/n)
    // Solves H(1/2 - eps) = 1 - k/n when the gap lies in (0, 1).
    std::optional<double> epsilon_root;
    double gamma = 0.0;   // sqrt(ln2/2)
    double c_const = 0.0; // sqrt(ln2) (1 + sqrt 2)
    // n (1/2 + epsilon_closed), clamped to n (sizes cannot exceed n).
    double budget_small = 0.0;

    // (1 - 2^-ell) n + c sqrt(nk)
    double budget_big_alpha(unsigned ell) const;
};

BoundsReport bounds_for(std::size_t n, std::size_t k);

} // namespace sparsecode

#endif
