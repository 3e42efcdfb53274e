#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

// Exact polynomial grammar: integer coefficients, the variable t, '^' with an
// optionally negative integer exponent, '*' or juxtaposition for products,
// parentheses, and '+'/'-' for sums.  Whitespace is insignificant.  Offsets
// in errors are 0-based byte positions.

namespace augtor {

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : s_(text) {}

    LaurentPoly run() {
        LaurentPoly out = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("unexpected trailing input", pos_);
        return out;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    LaurentPoly expr() {
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        LaurentPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            LaurentPoly t = term();
            acc = c == '-' ? acc - t : acc + t;
        }
        return acc;
    }

    LaurentPoly term() {
        LaurentPoly acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * factor();  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPoly factor() {
        LaurentPoly base = primary();
        if (peek() != '^') return base;
        std::size_t caret = pos_;
        ++pos_;
        long e = exponent();
        return power(std::move(base), e, caret);
    }

    LaurentPoly primary() {
        char c = peek();
        if (c == '\0') throw parse_error("unexpected end of input", pos_);
        if (c == '(') {
            ++pos_;
            LaurentPoly inner = expr();
            if (peek() != ')') throw parse_error("missing ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == 't') {
            ++pos_;
            return LaurentPoly({Int(1)}, 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return LaurentPoly({Int(s_.substr(start, pos_ - start))}, 0);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    long exponent() {
        char c = peek();
        bool neg = false;
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
            skip_ws();
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw parse_error("expected an integer exponent", pos_);
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 4) throw parse_error("exponent out of range", start);
        long e = std::stol(digits);
        return neg ? -e : e;
    }

    LaurentPoly power(LaurentPoly base, long e, std::size_t caret) {
        if (e == 0) return LaurentPoly({Int(1)}, 0);
        if (!base.is_zero() && base.span() == 0) {
            // monomial c t^k; only |c| = 1 may take a negative exponent
            Int c = base.coeff(base.min_exp());
            if (e < 0 && abs(c) != 1)
                throw parse_error("negative exponent on a non-invertible base", caret + 1);
            Int ce = e > 0 ? pow_int(c, static_cast<unsigned long>(e))
                           : (e % 2 != 0 ? c : Int(1));
            return LaurentPoly({std::move(ce)}, base.min_exp() * e);
        }
        if (e < 0) throw parse_error("negative exponent on a non-invertible base", caret + 1);
        if (base.span() * e > 4096)
            throw resource_error("parsed power exceeds the supported degree");
        LaurentPoly acc({Int(1)}, 0);
        for (long i = 0; i < e; ++i) acc = acc * base;
        return acc;
    }
};

}  // namespace detail

inline LaurentPoly parse_poly(const std::string& text) { return detail::PolyParser(text).run(); }

/// Canonical form, descending exponents; parse_poly(print_poly(f)) == f.
inline std::string print_poly(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (long e = f.max_exp(); e >= f.min_exp(); --e) {
        Int c = f.coeff(e);
        if (c == 0) continue;
        if (out.empty()) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? '-' : '+';
        }
        Int a = abs(c);
        if (e == 0) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str();
            out += 't';
            if (e != 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

}  // namespace augtor
