#ifndef QES_DETAIL_TEXT_HPP
#define QES_DETAIL_TEXT_HPP

// Shared reader/writer for the canonical polynomial text form
//   c*x1^e1*x2^e2 + ... with " + " / " - " separators and a leading "-".

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qes/numeric.hpp"

namespace qes::detail {

struct ParsedTerm {
    BigInt coeff;
    std::vector<std::pair<std::string, unsigned>> powers;
};

/// Throws std::invalid_argument on malformed input.
std::vector<ParsedTerm> parse_terms(std::string_view text);

/// Appends one term to `out`; `first` controls whether a leading " + " is written.
void write_term(std::string& out, const BigInt& coeff,
                const std::vector<std::pair<std::string, unsigned>>& powers, bool first);

}  // namespace qes::detail

#endif  // QES_DETAIL_TEXT_HPP
