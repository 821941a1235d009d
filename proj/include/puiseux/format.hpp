#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "puiseux/series.hpp"
#include "puiseux/xypoly.hpp"

namespace puiseux {

enum class Style { plain, latex };

namespace detail {

// full-precision decimal rendering; round-trips through parse_poly
inline std::string real_full_str(const Real& v) {
    return v.str(0, std::ios_base::scientific);
}

inline std::string real_digits_str(const Real& v, unsigned digits) {
    return v.str(digits, std::ios_base::scientific);
}

inline std::string rat_latex(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    std::string sign = r < 0 ? "-" : "";
    return sign + "\\frac{" + abs(rat_num(r)).str() + "}{" + rat_den(r).str() + "}";
}

inline std::string exponent_plain(const Rat& e) {
    if (is_integer(e)) return rat_str(e);
    return "(" + rat_str(e) + ")";
}

inline std::string exponent_latex(const Rat& e) {
    if (is_integer(e)) return "{" + rat_str(e) + "}";
    return "{\\frac{" + rat_num(e).str() + "}{" + rat_den(e).str() + "}}";
}

// one x^a y^b monomial body (without coefficient)
inline std::string vars_plain(const Rat& a, long b) {
    std::string out;
    if (a != 0) {
        out += "x";
        if (a != 1) out += "^" + exponent_plain(a);
    }
    if (b != 0) {
        out += "y";
        if (b != 1) out += "^" + std::to_string(b);
    }
    return out;
}

inline std::string vars_latex(const Rat& a, long b) {
    std::string out;
    if (a != 0) {
        out += "x";
        if (a != 1) out += "^" + exponent_latex(a);
    }
    if (b != 0) {
        out += "y";
        if (b != 1) out += "^{" + std::to_string(b) + "}";
    }
    return out;
}

struct PieceWriter {
    std::string out;

    // sign-separated " + " / " - " stream with a bare leading minus
    void append(bool negative, const std::string& body) {
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        out += body;
    }
};

}  // namespace detail

// Canonical text form, ascending (y_exp, x_exp). Plain style round-trips
// through parse_poly; complex coefficients are emitted as separate real and
// imaginary terms so no parentheses are needed.
template <class K>
std::string format_poly(const XYPoly<K>& f, Style style = Style::plain) {
    if (f.is_zero()) return "0";
    detail::PieceWriter w;
    for (const auto& [key, v] : f.terms()) {
        const std::string vars = style == Style::plain ? detail::vars_plain(key.x, key.y)
                                                       : detail::vars_latex(key.x, key.y);
        auto piece = [&](bool negative, const std::string& mag, bool imag) {
            std::string body = mag;
            if (body == "1" && (imag || !vars.empty())) body.clear();
            if (imag) body += "i";
            body += vars;
            if (body.empty()) body = "1";
            w.append(negative, body);
        };
        if constexpr (FieldTraits<K>::exact) {
            const Rat mag = abs(v);
            piece(v < 0,
                  style == Style::plain ? rat_str(mag)
                                        : detail::rat_latex(mag),
                  false);
        } else {
            if (v.re != 0) piece(v.re < 0, detail::real_full_str(abs(v.re)), false);
            if (v.im != 0) piece(v.im < 0, detail::real_full_str(abs(v.im)), true);
        }
    }
    return w.out;
}

namespace detail {

inline std::string coeff_series_plain(const Rat& c, unsigned) { return rat_str(abs(c)); }

inline std::string coeff_series_latex(const Rat& c, unsigned) { return rat_latex(abs(c)); }

}  // namespace detail

// standalone coefficient rendering for diagnostics and reports
inline std::string coeff_plain(const Rat& v, unsigned = 12) { return rat_str(v); }

inline std::string coeff_plain(const Complex& v, unsigned digits = 12) {
    if (v.im == 0) return v.re.str(digits);
    std::string out = "(" + v.re.str(digits);
    out += v.im < 0 ? " - " : " + ";
    out += abs(v.im).str(digits) + "i)";
    return out;
}

// "y = c1 x^e1 + ... + O(x^t)". Numeric coefficients print with `digits`
// significant digits; complex ones as a parenthesized re+im i pair.
template <class K>
std::string format_series(const PuiseuxSeries<K>& s, Style style = Style::plain,
                          unsigned digits = 12) {
    detail::PieceWriter w;
    for (const auto& term : s.terms) {
        std::string xpart = "x";
        if (term.exponent != 1)
            xpart += style == Style::plain ? "^" + detail::exponent_plain(term.exponent)
                                           : "^" + detail::exponent_latex(term.exponent);
        if constexpr (FieldTraits<K>::exact) {
            const Rat mag = abs(term.coeff);
            std::string c = style == Style::plain ? detail::coeff_series_plain(mag, digits)
                                                  : detail::coeff_series_latex(mag, digits);
            if (c == "1") c.clear();
            w.append(term.coeff < 0, c + xpart);
        } else {
            const Complex& v = term.coeff;
            if (v.im == 0) {
                w.append(v.re < 0, detail::real_digits_str(abs(v.re), digits) + xpart);
            } else {
                std::string re = detail::real_digits_str(abs(v.re), digits);
                std::string im = detail::real_digits_str(abs(v.im), digits);
                std::string body = style == Style::plain
                                       ? "(" + std::string(v.re < 0 ? "-" : "") + re +
                                             (v.im < 0 ? " - " : " + ") + im + "i)"
                                       : "\\left(" + std::string(v.re < 0 ? "-" : "") + re +
                                             (v.im < 0 ? " - " : " + ") + im + "i\\right)";
                w.append(false, body + xpart);
            }
        }
    }
    if (s.terms.empty()) w.append(false, "0");
    if (!s.exact) {
        std::string order = style == Style::plain
                                ? "O(x^" + detail::exponent_plain(s.truncation_order) + ")"
                                : "O(x^" + detail::exponent_latex(s.truncation_order) + ")";
        w.append(false, order);
    }
    return "y = " + w.out;
}

}  // namespace puiseux
