#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "puiseux/errors.hpp"
#include "puiseux/xypoly.hpp"

namespace puiseux {

namespace detail {

// Recursive-descent scanner for the polynomial input language (EBNF in the
// README). Signs separate terms; a term is a juxtaposed product of number,
// 'i', x and y factors with optional '*' between them.
template <class K>
class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    XYPoly<K> parse() {
        XYPoly<K> out;
        skip_ws();
        if (eof()) fail("empty input");
        bool first = true;
        while (!eof()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            parse_term(out, sign);
            skip_ws();
            first = false;
        }
        out.canonicalize();
        return out;
    }

private:
    void parse_term(XYPoly<K>& out, int sign) {
        K coeff = FieldTraits<K>::one();
        Rat x_exp = 0;
        long y_exp = 0;
        int i_power = 0;
        bool any = false;
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (c == '*') {
                if (!any) fail("'*' without a preceding factor");
                ++pos_;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff = coeff * FieldTraits<K>::from_rat(parse_number());
            } else if (c == 'i') {
                if constexpr (FieldTraits<K>::exact) throw ImaginaryInExactBackend();
                ++pos_;
                ++i_power;
            } else if (c == 'x') {
                ++pos_;
                x_exp += parse_exponent(/*allow_fraction=*/true);
            } else if (c == 'y') {
                ++pos_;
                Rat e = parse_exponent(/*allow_fraction=*/false);
                y_exp += static_cast<long>(rat_num(e));
            } else {
                break;
            }
            any = true;
        }
        if (!any) fail("expected a term");
        if (sign < 0) coeff = K(-coeff);
        if constexpr (!FieldTraits<K>::exact) {
            switch (i_power % 4) {
                case 1: coeff = coeff * Complex::i(); break;
                case 2: coeff = K(-coeff); break;
                case 3: coeff = K(-(coeff * Complex::i())); break;
                default: break;
            }
        }
        out.add_term(y_exp, std::move(x_exp), std::move(coeff));
    }

    // integer | integer '/' integer | decimal with optional e-exponent;
    // always converted exactly to a rational
    Rat parse_number() {
        std::size_t start = pos_;
        Int mantissa = parse_digits();
        if (!eof() && peek() == '/') {
            ++pos_;
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected denominator digits after '/'");
            Int den = parse_digits();
            if (den == 0) throw SyntaxError(start, "zero denominator");
            return make_rat(mantissa, den);
        }
        long frac_digits = 0;
        if (!eof() && peek() == '.') {
            ++pos_;
            std::size_t before = pos_;
            Int frac = parse_digits();
            frac_digits = static_cast<long>(pos_ - before);
            if (frac_digits == 0) fail("expected digits after '.'");
            mantissa = mantissa * int_pow(10, frac_digits) + frac;
        }
        long e10 = 0;
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            ++pos_;
            int esign = 1;
            if (!eof() && (peek() == '+' || peek() == '-')) {
                esign = peek() == '-' ? -1 : 1;
                ++pos_;
            }
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent digits");
            e10 = esign * static_cast<long>(parse_digits());
        }
        long net = e10 - frac_digits;
        if (net >= 0) return Rat(mantissa * int_pow(10, net));
        return make_rat(mantissa, int_pow(10, -net));
    }

    Int parse_digits() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        Int v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            ++pos_;
        }
        return v;
    }

    // after 'x' or 'y': optional '^' exponent; x admits '(p/q)', y does not
    Rat parse_exponent(bool allow_fraction) {
        skip_ws();
        if (eof() || peek() != '^') return Rat(1);
        ++pos_;
        skip_ws();
        bool neg = false;
        Rat value;
        if (!eof() && peek() == '(') {
            if (!allow_fraction)
                fail("y exponent must be a nonnegative integer");
            ++pos_;
            skip_ws();
            if (!eof() && peek() == '-') {
                neg = true;
                ++pos_;
            }
            Int p = parse_digits();
            skip_ws();
            if (eof() || peek() != '/') fail("expected '/' in fractional exponent");
            ++pos_;
            skip_ws();
            Int q = parse_digits();
            if (q == 0) fail("zero denominator in exponent");
            skip_ws();
            if (eof() || peek() != ')') fail("expected ')'");
            ++pos_;
            value = make_rat(p, q);
        } else {
            if (!eof() && peek() == '-') {
                neg = true;
                ++pos_;
            }
            value = Rat(parse_digits());
        }
        if (neg && value != 0)
            throw NegativeExponent("negative exponent at offset " + std::to_string(pos_));
        return value;
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parse the polynomial input language into canonical sparse form; like
// terms combine, zero terms drop.
template <class K>
XYPoly<K> parse_poly(std::string_view text) {
    return detail::PolyParser<K>(text).parse();
}

}  // namespace puiseux
