#pragma once

// Polynomial text syntax:
//   poly   := term (('+' | '-') term)*
//   term   := ['+' | '-'] ( coeff ['*'] 'x' ['^' exp] | coeff | 'x' ['^' exp] )
// whitespace anywhere between tokens; or the ascending list form
//   "coeffs:c0,c1,...,cd".

#include <polyprod/error.hpp>
#include <polyprod/polynomials/int_poly.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace polyprod::cli {

namespace detail {

class PolyLexer {
  public:
    explicit PolyLexer(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::size_t pos() const { return pos_; }

    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::string digits() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(start, "expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    /// Optionally signed integer.
    BigInt integer() {
        bool neg = false;
        if (accept('-')) {
            neg = true;
        } else {
            accept('+');
        }
        BigInt v(digits());
        return neg ? BigInt(-v) : v;
    }

  private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

inline void add_term(std::vector<BigInt>& c, std::size_t deg, const BigInt& v) {
    if (c.size() <= deg) c.resize(deg + 1);
    c[deg] += v;
}

inline constexpr std::size_t kMaxDegree = 1 << 20;

}  // namespace detail

inline IntPoly parse_polynomial(std::string_view text) {
    detail::PolyLexer lx(text);
    if (lx.at_end()) throw ParseError(0, "empty polynomial");
    std::vector<BigInt> coeffs;

    constexpr std::string_view kListPrefix = "coeffs:";
    std::size_t lead = 0;
    while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
    if (text.substr(lead, kListPrefix.size()) == kListPrefix) {
        detail::PolyLexer list(text.substr(lead + kListPrefix.size()));
        const std::size_t base = lead + kListPrefix.size();
        do {
            try {
                coeffs.push_back(list.integer());
            } catch (const ParseError& e) {
                throw ParseError(base + e.position(), "expected integer coefficient");
            }
        } while (list.accept(','));
        if (!list.at_end()) throw ParseError(base + list.pos(), "unexpected character");
    } else {
        bool first = true;
        while (!lx.at_end()) {
            BigInt sign = 1;
            if (lx.accept('-')) {
                sign = -1;
            } else if (!lx.accept('+') && !first) {
                throw ParseError(lx.pos(), "expected '+' or '-'");
            }
            first = false;
            BigInt coef = 1;
            bool has_coef = false;
            if (lx.peek_digit()) {
                coef = BigInt(lx.digits());
                has_coef = true;
            }
            if (has_coef && lx.accept('*')) {
                if (lx.peek() != 'x' && lx.peek() != 'X') throw ParseError(lx.pos(), "expected 'x' after '*'");
            }
            std::size_t deg = 0;
            if (lx.accept('x') || lx.accept('X')) {
                deg = 1;
                if (lx.accept('^')) {
                    const std::size_t at = lx.pos();
                    std::string e = lx.digits();
                    if (e.size() > 7 || std::stoul(e) > detail::kMaxDegree) throw ParseError(at, "exponent too large");
                    deg = std::stoul(e);
                }
            } else if (!has_coef) {
                throw ParseError(lx.pos(), "expected coefficient or 'x'");
            }
            detail::add_term(coeffs, deg, sign * coef);
        }
    }
    IntPoly p(std::move(coeffs));
    if (p.is_zero()) throw ParseError(0, "zero polynomial rejected");
    return p;
}

}  // namespace polyprod::cli
