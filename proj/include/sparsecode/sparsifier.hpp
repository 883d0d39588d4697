#ifndef SPARSECODE_SPARSIFIER_HPP
#define SPARSECODE_SPARSIFIER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sparsecode/alpha.hpp"
#include "sparsecode/gf2.hpp"

namespace sparsecode {

enum class SearchMode { exact, heuristic };

struct Violation {
    BitVector codeword;
    std::size_t weight = 0;
    std::size_t projected_weight = 0;
};

// Outcome of a full sparsifier check. When pass is false, the violation is
// the first offending codeword in Gray enumeration order.
struct Verdict {
    bool pass = true;
    std::optional<Violation> violation;
};

// S is an unweighted one-sided alpha-sparsifier of the code iff every
// codeword keeps at least an alpha fraction of its weight on S.
Verdict verify(const LinearCode &code, const BitVector &subset,
               const Alpha &alpha,
               std::size_t max_dimension = kDefaultMaxDimension);

// First codeword flip (Gray order) that strictly grows |S|, if any. The gain
// obeys |S ^ c| = |S| + wt(c) - 2 wt(c_S), so a flip improves exactly when
// wt(c_S) < wt(c)/2.
std::optional<BitVector> improve_once(const LinearCode &code,
                                      const BitVector &subset,
                                      std::size_t max_dimension = kDefaultMaxDimension);

// Drives S to a local maximum of |S| under codeword flips. The result stays
// in the coset S + C and, having no improving flip, is a 1/2-sparsifier.
// Terminates within n rounds because |S| strictly increases.
BitVector coset_maximize(const LinearCode &code, BitVector subset,
                         std::size_t max_dimension = kDefaultMaxDimension);

struct CensusReport {
    std::size_t n = 0;
    std::size_t k = 0;
    Alpha alpha{0, 1};
    std::uint64_t count = 0;
    std::uint64_t lower_bound = 0;            // 2^{n-k}
    std::vector<std::uint64_t> size_histogram; // index = |S|, length n+1
    std::size_t min_size = 0;
    bool exhaustive = true;
};

// Exact census over all 2^n subsets, each checked against all codewords with
// early exit. Partitioning into thread chunks cannot change any output.
// For alpha = 1/2 the count is checked against the 2^{n-k} floor; a shortfall
// is a fatal THEOREM_VIOLATION, not a report.
CensusReport count_sparsifiers(const LinearCode &code, const Alpha &alpha,
                               unsigned threads = 1,
                               std::size_t max_length = kDefaultMaxLength,
                               std::size_t max_dimension = kDefaultMaxDimension);

// The count >= 2^{n-k} floor for exhaustive 1/2-censuses. Separated out so
// the guard itself is testable; count_sparsifiers applies it on every run.
void enforce_theorem_floor(const CensusReport &report);

struct MinSparsifierResult {
    BitVector set;
    std::size_t size = 0;
};

// True minimum: subsets visited by increasing size, then lexicographic order
// of index sets; the first passing subset is returned. Never fails for
// alpha <= 1 since the full coordinate set always passes.
MinSparsifierResult min_sparsifier(const LinearCode &code, const Alpha &alpha,
                                   std::size_t max_length = kDefaultMaxLength,
                                   std::size_t max_dimension = kDefaultMaxDimension);

struct SmallSearchResult {
    std::optional<BitVector> set;
    std::size_t budget = 0; // floor(n(1/2 + eps)), clamped to n
    double epsilon = 0.0;   // sqrt(ln2/2 * k/n)
};

// A 1/2-sparsifier within the closed-form budget. Exact mode enumerates by
// increasing size and always succeeds; heuristic mode samples a uniform
// subset, runs coset_maximize, accepts if within budget, and repeats up to
// `restarts` times. A heuristic miss is NOT_FOUND, never a nonexistence
// claim.
SmallSearchResult small_sparsifier_search(const LinearCode &code,
                                          SearchMode mode, unsigned restarts,
                                          std::uint64_t seed,
                                          std::size_t max_length = kDefaultMaxLength,
                                          std::size_t max_dimension = kDefaultMaxDimension);

struct IterationRound {
    unsigned round = 0;              // r, starting at 1
    std::size_t remaining = 0;       // n_r, coordinates left after this round
    std::vector<std::size_t> chosen; // S_r as 0-based coordinates of the original code
    std::size_t dim = 0;             // dimension of the projected code C_r
    double budget = 0.0;             // n_{r-1}/2 + gamma sqrt(n_{r-1} k_{r-1})
};

struct IterationTrace {
    std::vector<IterationRound> rounds;
    BitVector final_set;
    Alpha alpha{0, 1};      // (2^ell - 1) / 2^ell
    double size_bound = 0.0; // (1 - 2^-ell) n + c sqrt(nk)
};

// The iterated construction: per round, find a 1/2-sparsifier of the current
// projected code within budget, pad it with the lowest-index unused
// coordinates until it covers half the remaining length, then project the
// code onto what is left and row-reduce. The union of the rounds' sets is
// verified as a (1 - 2^-ell)-sparsifier of the original code before the
// trace is returned.
IterationTrace iterated_sparsifier(const LinearCode &code, unsigned ell,
                                   SearchMode mode, unsigned restarts,
                                   std::uint64_t seed,
                                   std::size_t max_length = kDefaultMaxLength,
                                   std::size_t max_dimension = kDefaultMaxDimension);

struct MonteCarloResult {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
};

// Hit frequency of uniformly random subsets. Subsets are derived from
// (seed, trial index) alone, so the result is bit-identical for any thread
// count or chunking of the trial range.
MonteCarloResult monte_carlo_density(const LinearCode &code,
                                     std::uint64_t trials, const Alpha &alpha,
                                     std::uint64_t seed, unsigned threads = 1,
                                     std::size_t max_dimension = kDefaultMaxDimension);

} // namespace sparsecode

#endif
