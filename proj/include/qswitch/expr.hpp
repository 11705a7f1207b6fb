// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qswitch {

/// Evaluates small complex-valued arithmetic expressions used in gate
/// literals: numbers, `pi`, the imaginary unit `i`, + - * / and parentheses,
/// and the functions sqrt, exp, cos, sin. A number directly followed by `i`
/// or `pi` is an implicit product, so `0.5-0.25i` and `pi/2` both parse.
class ExpressionParser {
  public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    std::complex<double> parse() {
        pos_ = 0;
        auto value = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return value;
    }

  private:
    using C = std::complex<double>;

    [[noreturn]] void fail(const std::string &why) const {
        throw ValidationError("bad expression '" + std::string(text_) + "': " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    C expression() {
        C value = term();
        for (;;) {
            if (consume('+')) {
                value += term();
            } else if (consume('-')) {
                value -= term();
            } else {
                return value;
            }
        }
    }

    C term() {
        C value = unary();
        for (;;) {
            if (consume('*')) {
                value *= unary();
            } else if (consume('/')) {
                const C d = unary();
                if (d == C{}) {
                    fail("division by zero");
                }
                value /= d;
            } else {
                return value;
            }
        }
    }

    C unary() {
        if (consume('-')) {
            return -unary();
        }
        if (consume('+')) {
            return unary();
        }
        return primary();
    }

    std::string_view identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    C named(std::string_view name) {
        if (name == "i") {
            return {0.0, 1.0};
        }
        if (name == "pi") {
            return std::numbers::pi;
        }
        if (name == "sqrt" || name == "exp" || name == "cos" || name == "sin") {
            if (!consume('(')) {
                fail("expected '(' after " + std::string(name));
            }
            const C arg = expression();
            if (!consume(')')) {
                fail("missing ')'");
            }
            if (name == "sqrt") {
                return std::sqrt(arg);
            }
            if (name == "exp") {
                return std::exp(arg);
            }
            return name == "cos" ? std::cos(arg) : std::sin(arg);
        }
        fail("unknown name '" + std::string(name) + "'");
    }

    C primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        if (consume('(')) {
            const C value = expression();
            if (!consume(')')) {
                fail("missing ')'");
            }
            return value;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double number = 0.0;
            const char *first = text_.data() + pos_;
            const char *last = text_.data() + text_.size();
            const auto [ptr, ec] = std::from_chars(first, last, number);
            if (ec != std::errc{}) {
                fail("malformed number");
            }
            pos_ += static_cast<std::size_t>(ptr - first);
            // implicit product: 2i, 0.5pi
            if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                const std::size_t save = pos_;
                const auto name = identifier();
                if (name == "i" || name == "pi") {
                    return number * named(name);
                }
                pos_ = save;
            }
            return number;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return named(identifier());
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::complex<double> evaluate_complex(std::string_view text) {
    return ExpressionParser(text).parse();
}

/// Evaluates an expression that must come out real (|imag| <= 1e-15).
inline double evaluate_real(std::string_view text) {
    const auto z = evaluate_complex(text);
    if (std::abs(z.imag()) > 1e-15) {
        throw ValidationError("expression '" + std::string(text) + "' is not real");
    }
    return z.real();
}

} // namespace qswitch
