#include "sparsecode/bounds.hpp"

#include <cmath>

#include "sparsecode/error.hpp"

namespace sparsecode {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw Error(Errc::domain_error,
                    "entropy argument must lie in [0, 1]");
    if (x == 0.0 || x == 1.0)
        return 0.0;
    return x * std::log2(1.0 / x) + (1.0 - x) * std::log2(1.0 / (1.0 - x));
}

double BoundsReport::budget_big_alpha(unsigned ell) const {
    return (1.0 - std::ldexp(1.0, -static_cast<int>(ell))) *
               static_cast<double>(n) +
           c_const * std::sqrt(static_cast<double>(n) * static_cast<double>(k));
}

BoundsReport bounds_for(std::size_t n, std::size_t k) {
    if (n < 1 || k < 1 || k > n)
        throw Error(Errc::domain_error, "bounds require 1 <= k <= n");

    BoundsReport report;
    report.n = n;
    report.k = k;
    report.entropy_gap =
        1.0 - static_cast<double>(k) / static_cast<double>(n);
    report.epsilon_closed = std::sqrt(kLn2 / 2.0 * static_cast<double>(k) /
                                      static_cast<double>(n));
    report.gamma = std::sqrt(kLn2 / 2.0);
    report.c_const = std::sqrt(kLn2) * (1.0 + std::sqrt(2.0));
    report.budget_small =
        std::min(static_cast<double>(n),
                 static_cast<double>(n) * (0.5 + report.epsilon_closed));

    // H(1/2 - eps) is strictly decreasing in eps, from 1 down to 0, so a gap
    // inside (0, 1) has exactly one root.
    if (report.entropy_gap > 0.0 && report.entropy_gap < 1.0) {
        double lo = 0.0, hi = 0.5;
        for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (entropy(0.5 - mid) > report.entropy_gap)
                lo = mid;
            else
                hi = mid;
        }
        report.epsilon_root = 0.5 * (lo + hi);
    }
    return report;
}

} // namespace sparsecode
