#ifndef SPARSECODE_IO_HPP
#define SPARSECODE_IO_HPP

#include <string>
#include <string_view>

#include "sparsecode/gf2.hpp"
#include "sparsecode/graph.hpp"

namespace sparsecode {

// Code file: line 1 is "n k", then k lines of exactly n characters from
// {0,1} (generator rows, coordinate 1 leftmost). Trailing whitespace is
// ignored; anything else is a parse error with line and column. The declared
// k counts generator rows; the rank may come out lower.
LinearCode parse_code_text(std::string_view text,
                           std::string_view origin = "<input>");
LinearCode parse_code_file(const std::string &path);
std::string serialize_code(const LinearCode &code);

// Graph file: line 1 is "|V| |E|", then |E| lines "u v" with 0-based
// endpoints and no self-loops. Duplicate lines are parallel edges. Edge i
// (0-based line order) is coordinate i+1 of the cut space.
Graph parse_graph_text(std::string_view text,
                       std::string_view origin = "<input>");
Graph parse_graph_file(const std::string &path);
std::string serialize_graph(const Graph &g);

// Command-line subsets: a 1-indexed comma list ("2,3"), "@file" with one
// index per line, or the empty string for the empty set.
BitVector parse_subset_spec(const std::string &spec, std::size_t length);
std::string format_indices(const BitVector &subset); // "2,3", 1-indexed

std::string read_file(const std::string &path); // throws IO_ERROR

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string fnv1a64_hex(std::string_view bytes);

} // namespace sparsecode

#endif
