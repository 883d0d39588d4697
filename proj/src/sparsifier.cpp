#include "sparsecode/sparsifier.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "sparsecode/rng.hpp"

namespace sparsecode {

namespace {

// Single-word image of the basis; valid for n <= kHardEnumerationLimit.
std::vector<std::uint64_t> basis_masks(const LinearCode &code) {
    std::vector<std::uint64_t> masks;
    masks.reserve(code.dimension());
    for (const auto &row : code.basis())
        masks.push_back(row.words().empty() ? 0 : row.words()[0]);
    return masks;
}

// Streams codewords in Gray order (one XOR per step) and exits on the first
// violation of q*wt(c & S) >= p*wt(c). The zero codeword passes trivially.
bool mask_passes(const std::vector<std::uint64_t> &basis, std::uint64_t subset,
                 std::uint64_t p, std::uint64_t q) {
    std::uint64_t cur = 0;
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        if (q * static_cast<std::uint64_t>(popcount64(cur & subset)) <
            p * static_cast<std::uint64_t>(popcount64(cur)))
            return false;
    }
    return true;
}

BitVector mask_to_bitvector(std::uint64_t mask, std::size_t length) {
    BitVector v(length);
    while (mask != 0) {
        v.set(static_cast<std::size_t>(std::countr_zero(mask)), true);
        mask &= mask - 1;
    }
    return v;
}

void check_subset_length(const LinearCode &code, const BitVector &subset) {
    if (subset.length() != code.length())
        throw Error(Errc::length_mismatch,
                    "subset length " + std::to_string(subset.length()) +
                        " does not match code length " +
                        std::to_string(code.length()));
}

std::uint64_t plan_blocks(std::uint64_t total, unsigned threads) {
    const std::uint64_t want =
        threads <= 1 ? 1 : std::uint64_t{threads} * 16;
    return std::max<std::uint64_t>(1, std::min(want, total ? total : 1));
}

// Runs fn(block_index, first, last) over [0, total) split into `blocks`
// contiguous ranges pulled from an atomic queue. Results must be merged by
// block index afterwards so that the chunking never shows in the output.
template <typename Fn>
void run_blocks(std::uint64_t total, unsigned threads, std::uint64_t blocks,
                Fn &&fn) {
    auto bounds = [&](std::uint64_t b) {
        return total / blocks * b + std::min<std::uint64_t>(b, total % blocks);
    };
    if (threads <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            fn(b, bounds(b), bounds(b + 1));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks;
             b = next.fetch_add(1))
            fn(b, bounds(b), bounds(b + 1));
    };
    std::vector<std::thread> pool;
    const unsigned spawned =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
    pool.reserve(spawned);
    for (unsigned t = 0; t < spawned; ++t)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();
}

constexpr double kLn2 = 0.6931471805599453;

double closed_form_epsilon(std::size_t n, std::size_t k) {
    if (n == 0)
        return 0.0;
    return std::sqrt(kLn2 / 2.0 * static_cast<double>(k) /
                     static_cast<double>(n));
}

std::size_t small_budget(std::size_t n, double epsilon) {
    if (n == 0)
        return 0;
    const double raw = static_cast<double>(n) * (0.5 + epsilon);
    return std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(raw)));
}

// Lexicographic enumeration of s-element index subsets of [0, n).
class Combinations {
  public:
    Combinations(std::size_t n, std::size_t s) : n_(n), idx_(s) {
        std::iota(idx_.begin(), idx_.end(), std::size_t{0});
        done_ = s > n;
    }

    bool done() const noexcept { return done_; }
    const std::vector<std::size_t> &indices() const noexcept { return idx_; }

    std::uint64_t mask() const noexcept {
        std::uint64_t m = 0;
        for (std::size_t i : idx_)
            m |= std::uint64_t{1} << i;
        return m;
    }

    void advance() {
        if (idx_.empty()) {
            done_ = true;
            return;
        }
        std::size_t i = idx_.size();
        while (i-- > 0) {
            if (idx_[i] + (idx_.size() - i) < n_) {
                ++idx_[i];
                for (std::size_t j = i + 1; j < idx_.size(); ++j)
                    idx_[j] = idx_[j - 1] + 1;
                return;
            }
        }
        done_ = true;
    }

  private:
    std::size_t n_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
};

// Restriction of the code to a sorted list of coordinates, with the map back
// to the original coordinates. Projecting the basis rows and row-reducing
// realizes the set of codewords that appear in the projection, because the
// image of a linear map is linear.
struct ProjectedCode {
    LinearCode code;
    std::vector<std::size_t> to_global;
};

ProjectedCode project_onto(const LinearCode &code,
                           const std::vector<std::size_t> &keep,
                           const std::vector<std::size_t> &global) {
    std::vector<BitVector> rows;
    rows.reserve(code.dimension());
    for (const auto &b : code.basis()) {
        BitVector row(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (b.get(keep[j]))
                row.set(j, true);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> to_global(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        to_global[j] = global[keep[j]];
    return {LinearCode(Gf2Matrix(keep.size(), std::move(rows))),
            std::move(to_global)};
}

} // namespace

Verdict verify(const LinearCode &code, const BitVector &subset,
               const Alpha &alpha, std::size_t max_dimension) {
    check_subset_length(code, subset);
    for (const auto &c : code.codewords(max_dimension)) {
        const std::size_t w = c.weight();
        const std::size_t wp = c.and_weight(subset);
        if (!alpha.meets_lower(wp, w))
            return {false, Violation{c, w, wp}};
    }
    return {true, std::nullopt};
}

std::optional<BitVector> improve_once(const LinearCode &code,
                                      const BitVector &subset,
                                      std::size_t max_dimension) {
    check_subset_length(code, subset);
    for (const auto &c : code.codewords(max_dimension)) {
        if (2 * c.and_weight(subset) < c.weight())
            return add(subset, c);
    }
    return std::nullopt;
}

BitVector coset_maximize(const LinearCode &code, BitVector subset,
                         std::size_t max_dimension) {
    std::size_t rounds = 0;
    while (auto next = improve_once(code, subset, max_dimension)) {
        subset = std::move(*next);
        if (++rounds > code.length())
            throw std::logic_error(
                "coset_maximize: more improvement rounds than coordinates");
    }
    return subset;
}

// Work budget: 2^n subsets, each scanned against at most 2^k codewords of
// n/64 words each, i.e. O(2^n 2^k n/64) word operations before early exits.
CensusReport count_sparsifiers(const LinearCode &code, const Alpha &alpha,
                               unsigned threads, std::size_t max_length,
                               std::size_t max_dimension) {
    check_length_cap(code.length(), max_length);
    check_dimension_cap(code.dimension(), max_dimension);

    const std::size_t n = code.length();
    const std::size_t k = code.dimension();
    const auto basis = basis_masks(code);
    const std::uint64_t p = alpha.num();
    const std::uint64_t q = alpha.den();
    const std::uint64_t total = std::uint64_t{1} << n;

    struct Partial {
        std::uint64_t count = 0;
        std::vector<std::uint64_t> hist;
    };
    const std::uint64_t blocks = plan_blocks(total, threads);
    std::vector<Partial> partials(blocks);

    run_blocks(total, threads, blocks,
               [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
                   Partial part;
                   part.hist.assign(n + 1, 0);
                   for (std::uint64_t i = lo; i < hi; ++i) {
                       const std::uint64_t subset = i ^ (i >> 1); // Gray order
                       if (mask_passes(basis, subset, p, q)) {
                           ++part.count;
                           ++part.hist[static_cast<std::size_t>(
                               popcount64(subset))];
                       }
                   }
                   partials[b] = std::move(part);
               });

    CensusReport report;
    report.n = n;
    report.k = k;
    report.alpha = alpha;
    report.lower_bound = std::uint64_t{1} << (n - k);
    report.size_histogram.assign(n + 1, 0);
    report.exhaustive = true;
    for (const auto &part : partials) {
        report.count += part.count;
        for (std::size_t s = 0; s < part.hist.size(); ++s)
            report.size_histogram[s] += part.hist[s];
    }
    report.min_size = n + 1;
    for (std::size_t s = 0; s <= n; ++s)
        if (report.size_histogram[s] != 0) {
            report.min_size = s;
            break;
        }
    enforce_theorem_floor(report);
    return report;
}

void enforce_theorem_floor(const CensusReport &report) {
    if (!report.exhaustive || !report.alpha.is_half())
        return;
    if (report.count < report.lower_bound)
        throw Error(Errc::theorem_violation,
                    "exhaustive 1/2-sparsifier count " +
                        std::to_string(report.count) +
                        " fell below the 2^(n-k) floor " +
                        std::to_string(report.lower_bound),
                    {{"n", std::to_string(report.n)},
                     {"k", std::to_string(report.k)},
                     {"count", std::to_string(report.count)},
                     {"lower_bound", std::to_string(report.lower_bound)}});
}

MinSparsifierResult min_sparsifier(const LinearCode &code, const Alpha &alpha,
                                   std::size_t max_length,
                                   std::size_t max_dimension) {
    check_length_cap(code.length(), max_length);
    check_dimension_cap(code.dimension(), max_dimension);

    const std::size_t n = code.length();
    const auto basis = basis_masks(code);
    for (std::size_t s = 0; s <= n; ++s) {
        for (Combinations comb(n, s); !comb.done(); comb.advance()) {
            const std::uint64_t mask = comb.mask();
            if (mask_passes(basis, mask, alpha.num(), alpha.den()))
                return {mask_to_bitvector(mask, n), s};
        }
    }
    throw std::logic_error("min_sparsifier: full coordinate set rejected");
}

SmallSearchResult small_sparsifier_search(const LinearCode &code,
                                          SearchMode mode, unsigned restarts,
                                          std::uint64_t seed,
                                          std::size_t max_length,
                                          std::size_t max_dimension) {
    const std::size_t n = code.length();
    const std::size_t k = code.dimension();
    SmallSearchResult result;
    result.epsilon = closed_form_epsilon(n, k);
    result.budget = small_budget(n, result.epsilon);

    if (k == 0) {
        result.set = BitVector(n);
        return result;
    }

    if (mode == SearchMode::exact) {
        auto min = min_sparsifier(code, Alpha(1, 2), max_length, max_dimension);
        if (min.size > result.budget)
            throw Error(Errc::theorem_violation,
                        "minimum 1/2-sparsifier size " +
                            std::to_string(min.size) +
                            " exceeds the n(1/2 + eps) budget " +
                            std::to_string(result.budget),
                        {{"n", std::to_string(n)},
                         {"k", std::to_string(k)},
                         {"min_size", std::to_string(min.size)},
                         {"budget", std::to_string(result.budget)}});
        result.set = std::move(min.set);
        return result;
    }

    check_dimension_cap(k, max_dimension);
    for (unsigned attempt = 0; attempt < restarts; ++attempt) {
        SplitMix64 gen = stream_for(seed, attempt);
        BitVector start = random_subset(n, gen);
        BitVector maximized = coset_maximize(code, std::move(start), max_dimension);
        if (maximized.weight() <= result.budget) {
            result.set = std::move(maximized);
            return result;
        }
    }
    return result;
}

IterationTrace iterated_sparsifier(const LinearCode &code, unsigned ell,
                                   SearchMode mode, unsigned restarts,
                                   std::uint64_t seed, std::size_t max_length,
                                   std::size_t max_dimension) {
    if (ell < 1 || ell > 30)
        throw Error(Errc::domain_error, "ell must lie in [1, 30]");
    check_dimension_cap(code.dimension(), max_dimension);

    const std::size_t n = code.length();
    const std::size_t k = code.dimension();
    const double gamma = std::sqrt(kLn2 / 2.0);
    const double c_const = std::sqrt(kLn2) * (1.0 + std::sqrt(2.0));

    IterationTrace trace;
    trace.alpha = Alpha((std::uint64_t{1} << ell) - 1, std::uint64_t{1} << ell);
    trace.size_bound = (1.0 - std::ldexp(1.0, -static_cast<int>(ell))) *
                           static_cast<double>(n) +
                       c_const * std::sqrt(static_cast<double>(n) *
                                           static_cast<double>(k));
    trace.final_set = BitVector(n);

    LinearCode current = code;
    std::vector<std::size_t> global(n);
    std::iota(global.begin(), global.end(), std::size_t{0});

    for (unsigned r = 1; r <= ell; ++r) {
        const std::size_t m = current.length();
        const std::size_t k_cur = current.dimension();

        SmallSearchResult found = small_sparsifier_search(
            current, mode, restarts, mix64(seed) + r, max_length, max_dimension);
        if (!found.set)
            throw Error(Errc::not_found,
                        "no 1/2-sparsifier within budget found in round " +
                            std::to_string(r) + " (heuristic mode)",
                        {{"round", std::to_string(r)},
                         {"budget", std::to_string(found.budget)},
                         {"restarts", std::to_string(restarts)}});
        BitVector chosen = std::move(*found.set);

        // Pad with the lowest-index unused coordinates until |S_r| covers
        // half the remaining length; extra coordinates never hurt the
        // sparsification property, and the recursion n_r <= n_{r-1}/2
        // needs the half coverage.
        const std::size_t target = (m + 1) / 2;
        std::size_t size = chosen.weight();
        for (std::size_t i = 0; i < m && size < target; ++i)
            if (!chosen.get(i)) {
                chosen.set(i, true);
                ++size;
            }

        std::vector<std::size_t> keep;
        keep.reserve(m - size);
        for (std::size_t i = 0; i < m; ++i)
            if (!chosen.get(i))
                keep.push_back(i);

        IterationRound round;
        round.round = r;
        round.remaining = keep.size();
        round.budget = static_cast<double>(m) / 2.0 +
                       gamma * std::sqrt(static_cast<double>(m) *
                                         static_cast<double>(k_cur));
        for (std::size_t i : chosen.set_indices()) {
            round.chosen.push_back(global[i]);
            trace.final_set.set(global[i], true);
        }
        std::sort(round.chosen.begin(), round.chosen.end());

        ProjectedCode next = project_onto(current, keep, global);
        round.dim = next.code.dimension();
        trace.rounds.push_back(std::move(round));

        current = std::move(next.code);
        global = std::move(next.to_global);
    }

    const Verdict verdict = verify(code, trace.final_set, trace.alpha, max_dimension);
    if (!verdict.pass)
        throw Error(Errc::theorem_violation,
                    "iterated construction produced a set that fails "
                    "verification at alpha = " +
                        trace.alpha.to_string(),
                    {{"codeword", verdict.violation->codeword.to_string()},
                     {"weight", std::to_string(verdict.violation->weight)},
                     {"projected_weight",
                      std::to_string(verdict.violation->projected_weight)}});
    // For k = 0 the sqrt(nk) slack vanishes while padding still rounds odd
    // lengths up, so the bound only applies to codes with k >= 1.
    if (k >= 1 &&
        static_cast<double>(trace.final_set.weight()) > trace.size_bound + 1e-9)
        throw Error(Errc::theorem_violation,
                    "iterated construction exceeded the alpha n + c sqrt(nk) "
                    "size bound",
                    {{"size", std::to_string(trace.final_set.weight())},
                     {"bound", std::to_string(trace.size_bound)}});
    return trace;
}

MonteCarloResult monte_carlo_density(const LinearCode &code,
                                     std::uint64_t trials, const Alpha &alpha,
                                     std::uint64_t seed, unsigned threads,
                                     std::size_t max_dimension) {
    check_dimension_cap(code.dimension(), max_dimension);
    const std::size_t n = code.length();

    const std::uint64_t blocks = plan_blocks(trials, threads);
    std::vector<std::uint64_t> partial_hits(blocks, 0);

    run_blocks(trials, threads, blocks,
               [&](std::uint64_t b, std::uint64_t lo, std::uint64_t hi) {
                   std::uint64_t hits = 0;
                   for (std::uint64_t t = lo; t < hi; ++t) {
                       SplitMix64 gen = stream_for(seed, t);
                       const BitVector subset = random_subset(n, gen);
                       bool pass = true;
                       for (const auto &c : code.codewords(max_dimension)) {
                           if (!alpha.meets_lower(c.and_weight(subset),
                                                  c.weight())) {
                               pass = false;
                               break;
                           }
                       }
                       if (pass)
                           ++hits;
                   }
                   partial_hits[b] = hits;
               });

    MonteCarloResult result;
    result.trials = trials;
    for (std::uint64_t h : partial_hits)
        result.hits += h;
    result.estimate =
        trials == 0 ? 0.0
                    : static_cast<double>(result.hits) /
                          static_cast<double>(trials);
    return result;
}

} // namespace sparsecode
