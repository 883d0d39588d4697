#ifndef SPARSECODE_ERROR_HPP
#define SPARSECODE_ERROR_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace sparsecode {

enum class Errc {
    length_mismatch,
    dimension_too_large,
    length_too_large,
    parse_error,
    io_error,
    domain_error,
    not_found,
    theorem_violation,
};

// Single exception type; `details` carries machine-readable key/value pairs
// (line/column for parse errors, the counterexample witness for
// theorem_violation).
class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string message,
          std::map<std::string, std::string> details = {})
        : std::runtime_error(std::move(message)), code_(code),
          details_(std::move(details)) {}

    Errc code() const noexcept { return code_; }
    const std::map<std::string, std::string> &details() const noexcept {
        return details_;
    }

  private:
    Errc code_;
    std::map<std::string, std::string> details_;
};

const char *errc_name(Errc code) noexcept;

} // namespace sparsecode

#endif
