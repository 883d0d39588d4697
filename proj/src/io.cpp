#include "sparsecode/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace sparsecode {

namespace {

[[noreturn]] void parse_fail(std::string_view origin, std::size_t line,
                             std::size_t column, const std::string &what) {
    throw Error(Errc::parse_error,
                std::string(origin) + ":" + std::to_string(line) + ":" +
                    std::to_string(column) + ": " + what,
                {{"line", std::to_string(line)},
                 {"column", std::to_string(column)}});
}

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    // Returns the next line without its trailing whitespace; false at EOF.
    bool next(std::string_view &line) {
        if (pos >= text.size())
            return false;
        const std::size_t start = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        pos = end + 1;
        ++line_no;
        std::size_t stop = end;
        while (stop > start &&
               (text[stop - 1] == ' ' || text[stop - 1] == '\t' ||
                text[stop - 1] == '\r'))
            --stop;
        line = text.substr(start, stop - start);
        return true;
    }
};

bool only_whitespace(std::string_view s) {
    return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Parses unsigned integers separated by blanks; reports the 1-based column
// of the first offending character.
std::vector<std::uint64_t> parse_uint_fields(std::string_view line,
                                             std::size_t expected,
                                             std::string_view origin,
                                             std::size_t line_no) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::uint64_t value = 0;
        auto [ptr, ec] =
            std::from_chars(line.data() + i, line.data() + line.size(), value);
        if (ec != std::errc{} || ptr == line.data() + i)
            parse_fail(origin, line_no, i + 1, "expected an unsigned integer");
        if (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')
            parse_fail(origin, line_no,
                       static_cast<std::size_t>(ptr - line.data()) + 1,
                       "unexpected character in integer field");
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - line.data());
    }
    if (out.size() != expected)
        parse_fail(origin, line_no, line.size() + 1,
                   "expected " + std::to_string(expected) +
                       " integer fields, found " + std::to_string(out.size()));
    return out;
}

} // namespace

LinearCode parse_code_text(std::string_view text, std::string_view origin) {
    LineReader reader{text};
    std::string_view header;
    if (!reader.next(header))
        parse_fail(origin, 1, 1, "missing \"n k\" header line");
    const auto fields = parse_uint_fields(header, 2, origin, reader.line_no);
    const std::size_t n = static_cast<std::size_t>(fields[0]);
    const std::size_t declared_k = static_cast<std::size_t>(fields[1]);

    std::vector<BitVector> rows;
    rows.reserve(declared_k);
    for (std::size_t r = 0; r < declared_k; ++r) {
        std::string_view line;
        if (!reader.next(line))
            parse_fail(origin, reader.line_no + 1, 1,
                       "expected " + std::to_string(declared_k) +
                           " generator rows, found " + std::to_string(r));
        BitVector row(n);
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i >= n)
                parse_fail(origin, reader.line_no, i + 1,
                           "row longer than n = " + std::to_string(n));
            if (line[i] == '1')
                row.set(i, true);
            else if (line[i] != '0')
                parse_fail(origin, reader.line_no, i + 1,
                           std::string("invalid character '") + line[i] +
                               "' in generator row");
        }
        if (line.size() < n)
            parse_fail(origin, reader.line_no, line.size() + 1,
                       "row shorter than n = " + std::to_string(n));
        rows.push_back(std::move(row));
    }
    std::string_view rest;
    while (reader.next(rest))
        if (!only_whitespace(rest))
            parse_fail(origin, reader.line_no, 1,
                       "unexpected content after the last generator row");
    return LinearCode(Gf2Matrix(n, std::move(rows)));
}

LinearCode parse_code_file(const std::string &path) {
    return parse_code_text(read_file(path), path);
}

std::string serialize_code(const LinearCode &code) {
    std::ostringstream out;
    out << code.length() << ' ' << code.generators().rows.size() << '\n';
    for (const auto &row : code.generators().rows)
        out << row.to_string() << '\n';
    return out.str();
}

Graph parse_graph_text(std::string_view text, std::string_view origin) {
    LineReader reader{text};
    std::string_view header;
    if (!reader.next(header))
        parse_fail(origin, 1, 1, "missing \"|V| |E|\" header line");
    const auto fields = parse_uint_fields(header, 2, origin, reader.line_no);
    const std::size_t num_vertices = static_cast<std::size_t>(fields[0]);
    const std::size_t num_edges = static_cast<std::size_t>(fields[1]);

    std::vector<Edge> edges;
    edges.reserve(num_edges);
    for (std::size_t i = 0; i < num_edges; ++i) {
        std::string_view line;
        if (!reader.next(line))
            parse_fail(origin, reader.line_no + 1, 1,
                       "expected " + std::to_string(num_edges) +
                           " edge lines, found " + std::to_string(i));
        const auto uv = parse_uint_fields(line, 2, origin, reader.line_no);
        if (uv[0] >= num_vertices || uv[1] >= num_vertices)
            parse_fail(origin, reader.line_no, 1,
                       "edge endpoint outside [0, " +
                           std::to_string(num_vertices) + ")");
        if (uv[0] == uv[1])
            parse_fail(origin, reader.line_no, 1,
                       "self-loop (a loop lies in no cut)");
        edges.push_back(Edge{static_cast<std::uint32_t>(uv[0]),
                             static_cast<std::uint32_t>(uv[1])});
    }
    std::string_view rest;
    while (reader.next(rest))
        if (!only_whitespace(rest))
            parse_fail(origin, reader.line_no, 1,
                       "unexpected content after the last edge line");
    return Graph(num_vertices, std::move(edges));
}

Graph parse_graph_file(const std::string &path) {
    return parse_graph_text(read_file(path), path);
}

std::string serialize_graph(const Graph &g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge &e : g.edges())
        out << e.u << ' ' << e.v << '\n';
    return out.str();
}

BitVector parse_subset_spec(const std::string &spec, std::size_t length) {
    std::string body = spec;
    if (!spec.empty() && spec[0] == '@') {
        std::string file = read_file(spec.substr(1));
        // One 1-based index per line becomes a comma list.
        std::string joined;
        for (char ch : file) {
            if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t') {
                if (!joined.empty() && joined.back() != ',')
                    joined.push_back(',');
            } else {
                joined.push_back(ch);
            }
        }
        if (!joined.empty() && joined.back() == ',')
            joined.pop_back();
        body = std::move(joined);
    }

    BitVector subset(length);
    if (body.empty())
        return subset;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string::npos)
            comma = body.size();
        const std::string_view field =
            std::string_view(body).substr(start, comma - start);
        std::uint64_t index = 0;
        auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), index);
        if (ec != std::errc{} || ptr != field.data() + field.size() ||
            field.empty())
            throw Error(Errc::parse_error,
                        "invalid subset index '" + std::string(field) + "'");
        if (index < 1 || index > length)
            throw Error(Errc::domain_error,
                        "subset index " + std::to_string(index) +
                            " outside [1, " + std::to_string(length) + "]");
        subset.set(static_cast<std::size_t>(index - 1), true);
        if (comma == body.size())
            break;
        start = comma + 1;
    }
    return subset;
}

std::string format_indices(const BitVector &subset) {
    std::string out;
    for (std::size_t i : subset.set_indices()) {
        if (!out.empty())
            out.push_back(',');
        out += std::to_string(i + 1);
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io_error, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(Errc::io_error, "failed reading '" + path + "'");
    return buf.str();
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace sparsecode
