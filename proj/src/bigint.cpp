#include "uskolem/bigint.hpp"

#include <cctype>

namespace uss {

std::optional<BigInt> parse_bigint(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = text.size();
    while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    std::string_view s = text.substr(i, j - i);
    if (s.empty()) return std::nullopt;
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return std::nullopt;
    for (std::size_t t = k; t < s.size(); ++t)
        if (!std::isdigit(static_cast<unsigned char>(s[t]))) return std::nullopt;
    BigInt v;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    if (v.set_str(digits, 10) != 0) return std::nullopt;
    return v;
}

}  // namespace uss
