#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "fxnet/error.hpp"

namespace fxnet {

/// Three-letter uppercase currency identifier (ISO-style; precious metals
/// XAU/XAG/XPT are ordinary codes here).
class CurrencyCode {
public:
    /// ISO's "no currency" placeholder.
    CurrencyCode() : chars_{'X', 'X', 'X'} {}

    explicit CurrencyCode(std::string_view code) {
        if (code.size() != 3)
            throw ValidationError("currency code '" + std::string(code) +
                                  "' must be exactly 3 characters");
        for (char c : code) {
            if (c < 'A' || c > 'Z')
                throw ValidationError("currency code '" + std::string(code) +
                                      "' must use A-Z only");
        }
        chars_ = {code[0], code[1], code[2]};
    }

    std::string str() const { return std::string(chars_.data(), 3); }
    std::string_view view() const { return std::string_view(chars_.data(), 3); }

    auto operator<=>(const CurrencyCode&) const = default;

private:
    std::array<char, 3> chars_{};
};

inline std::string operator+(const std::string& s, const CurrencyCode& c) {
    return s + c.str();
}

} // namespace fxnet
