#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/surd.hpp"
#include "ncw/symbolic.hpp"

namespace ncw {

// Tokenizer shared by the scalar and torus-element grammars.
// Rational literals bind their optional denominator and 'i' suffix when
// written contiguously, so "1/2i" is the literal (1/2)i while "1 / 2" is a
// division.
namespace detail {

struct Token {
    enum Kind { End, Literal, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen } kind;
    GaussianRational value;  // Literal
    std::string text;        // Ident
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("parse error at position " + std::to_string(pos_) + ": " + msg);
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, {}, {}};
            return;
        }
        char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Integer num = read_int();
            Integer den = 1;
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                den = read_int();
                if (den == 0) throw input_error("division by zero in literal");
            }
            Rational r(num, den);
            if (pos_ < s_.size() && s_[pos_] == 'i' && !ident_continues(pos_ + 1)) {
                ++pos_;
                tok_ = {Token::Literal, GaussianRational(Rational(0), r), {}};
            } else {
                tok_ = {Token::Literal, GaussianRational(r), {}};
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Ident, {}, std::string(s_.substr(start, pos_ - start))};
            return;
        }
        ++pos_;
        switch (ch) {
            case '+': tok_ = {Token::Plus, {}, {}}; return;
            case '-': tok_ = {Token::Minus, {}, {}}; return;
            case '*': tok_ = {Token::Star, {}, {}}; return;
            case '/': tok_ = {Token::Slash, {}, {}}; return;
            case '^': tok_ = {Token::Caret, {}, {}}; return;
            case '(': tok_ = {Token::LParen, {}, {}}; return;
            case ')': tok_ = {Token::RParen, {}, {}}; return;
            default: throw input_error("parse error: unexpected character '" + std::string(1, ch) + "'");
        }
    }

    bool ident_continues(size_t p) const {
        return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
    }

    Integer read_int() {
        Integer v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    std::string_view s_;
    size_t pos_ = 0;
    Token tok_;
};

inline int32_t parse_exponent(Lexer& lx) {
    bool neg = false;
    if (lx.peek().kind == Token::Minus) {
        lx.next();
        neg = true;
    } else if (lx.peek().kind == Token::Plus) {
        lx.next();
    }
    if (lx.peek().kind != Token::Literal) lx.fail("expected integer exponent");
    GaussianRational v = lx.next().value;
    if (!v.is_real() || !is_integer(v.re())) lx.fail("exponent must be an integer");
    Integer e = boost::multiprecision::numerator(v.re());
    if (e > 1000000 || e < -1000000) lx.fail("exponent out of range");
    auto r = static_cast<int32_t>(e.convert_to<long long>());
    return neg ? -r : r;
}

// Generic expression parser; Atom supplies the element type and its
// primitive values.  Used with SymbolicScalar here and NCElement in the
// torus module.
template <typename Elem, typename AtomFn>
Elem parse_expression(Lexer& lx, AtomFn&& atom);

template <typename Elem, typename AtomFn>
Elem parse_factor(Lexer& lx, AtomFn&& atom) {
    Elem base = [&]() -> Elem {
        const Token& t = lx.peek();
        if (t.kind == Token::LParen) {
            lx.next();
            Elem e = parse_expression<Elem>(lx, atom);
            if (lx.peek().kind != Token::RParen) lx.fail("expected ')'");
            lx.next();
            return e;
        }
        return atom(lx);
    }();
    if (lx.peek().kind == Token::Caret) {
        lx.next();
        int32_t e = parse_exponent(lx);
        return power(base, e);
    }
    return base;
}

template <typename Elem, typename AtomFn>
Elem parse_term(Lexer& lx, AtomFn&& atom) {
    bool neg = false;
    while (lx.peek().kind == Token::Minus) {
        lx.next();
        neg = !neg;
    }
    Elem r = parse_factor<Elem>(lx, atom);
    if (neg) r = -r;
    for (;;) {
        if (lx.peek().kind == Token::Star) {
            lx.next();
            r = r * parse_factor<Elem>(lx, atom);
        } else if (lx.peek().kind == Token::Slash) {
            lx.next();
            r = r / parse_factor<Elem>(lx, atom);
        } else {
            return r;
        }
    }
}

template <typename Elem, typename AtomFn>
Elem parse_expression(Lexer& lx, AtomFn&& atom) {
    bool neg = false;
    if (lx.peek().kind == Token::Minus) {
        lx.next();
        neg = true;
    } else if (lx.peek().kind == Token::Plus) {
        lx.next();
    }
    Elem r = parse_term<Elem>(lx, atom);
    if (neg) r = -r;
    for (;;) {
        if (lx.peek().kind == Token::Plus) {
            lx.next();
            r = r + parse_term<Elem>(lx, atom);
        } else if (lx.peek().kind == Token::Minus) {
            lx.next();
            r = r - parse_term<Elem>(lx, atom);
        } else {
            return r;
        }
    }
}

}  // namespace detail

inline std::optional<Unit> unit_from_name(std::string_view name) {
    if (name == "L") return Unit::Lambda;
    if (name == "th") return Unit::Theta;
    if (name == "tau") return Unit::Tau;
    if (name == "z") return Unit::Z;
    if (name == "c") return Unit::C;
    return std::nullopt;
}

// Parses the scalar syntax, e.g. "(3/2 + 1/2i) * L^-2 * th * c".
inline SymbolicScalar parse_scalar(std::string_view text) {
    detail::Lexer lx(text);
    auto atom = [](detail::Lexer& l) -> SymbolicScalar {
        const detail::Token& t = l.peek();
        if (t.kind == detail::Token::Literal) return SymbolicScalar(l.next().value);
        if (t.kind == detail::Token::Ident) {
            if (t.text == "i") {
                l.next();
                return SymbolicScalar(GaussianRational::i());
            }
            if (auto u = unit_from_name(t.text)) {
                l.next();
                return SymbolicScalar::unit(*u);
            }
            l.fail("unknown symbol '" + t.text + "' in scalar expression");
        }
        l.fail("expected a value");
    };
    SymbolicScalar r = detail::parse_expression<SymbolicScalar>(lx, atom);
    if (lx.peek().kind != detail::Token::End) lx.fail("trailing input");
    return r;
}

inline std::string to_string(const Monomial& m) {
    std::string s;
    auto emit = [&](Unit u) {
        int32_t e = m.exp(u);
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += unit_name(u);
        if (e != 1) s += "^" + std::to_string(e);
    };
    emit(Unit::Lambda);
    emit(Unit::Theta);
    emit(Unit::Tau);
    emit(Unit::Z);
    emit(Unit::C);
    return s;
}

inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, coeff] : p.terms()) {
        GaussianRational c = coeff;
        if (first) {
            first = false;
        } else if (c.is_real() && c.re() < 0) {
            s += " - ";
            c = -c;
        } else {
            s += " + ";
        }
        std::string mono = to_string(m);
        if (mono.empty()) {
            s += to_string(c);
        } else if (c.is_one()) {
            s += mono;
        } else if (c == -GaussianRational(1)) {
            s += "-" + mono;
        } else {
            s += to_string(c) + "*" + mono;
        }
    }
    return s;
}

inline std::string to_string(const SymbolicScalar& x) {
    if (x.is_polynomial()) return to_string(x.num());
    std::string num = to_string(x.num());
    if (x.num().size() > 1) num = "(" + num + ")";
    return num + "/(" + to_string(x.den()) + ")";
}

// Parses "(p + q*sqrt(D))/r" and natural variants like "sqrt(2)",
// "(-1+1*sqrt(2))/1", "3 - 2*sqrt(5)".
inline QuadraticSurd parse_surd(std::string_view text) {
    detail::Lexer lx(text);
    using detail::Token;

    auto read_signed_int = [&](bool allow_sign) -> Integer {
        bool neg = false;
        if (allow_sign && lx.peek().kind == Token::Minus) {
            lx.next();
            neg = true;
        } else if (allow_sign && lx.peek().kind == Token::Plus) {
            lx.next();
        }
        if (lx.peek().kind != Token::Literal) lx.fail("expected integer");
        GaussianRational v = lx.next().value;
        if (!v.is_real() || !is_integer(v.re())) lx.fail("expected integer");
        Integer r = boost::multiprecision::numerator(v.re());
        return neg ? Integer(-r) : r;
    };

    Integer p = 0, q = 0, d = 1, r = 1;
    bool parenthesized = false;
    if (lx.peek().kind == Token::LParen) {
        lx.next();
        parenthesized = true;
    }

    auto read_radical = [&]() {
        // at 'sqrt'
        lx.next();
        if (lx.peek().kind != Token::LParen) lx.fail("expected '(' after sqrt");
        lx.next();
        d = read_signed_int(false);
        if (lx.peek().kind != Token::RParen) lx.fail("expected ')'");
        lx.next();
    };

    // First summand: integer or [q*]sqrt(D).
    bool lead_neg = false;
    if (lx.peek().kind == Token::Minus) {
        lx.next();
        lead_neg = true;
    }
    if (lx.peek().kind == Token::Ident && lx.peek().text == "sqrt") {
        q = lead_neg ? -1 : 1;
        read_radical();
    } else {
        Integer v = read_signed_int(false);
        if (lx.peek().kind == Token::Star) {
            lx.next();
            if (!(lx.peek().kind == Token::Ident && lx.peek().text == "sqrt"))
                lx.fail("expected sqrt after '*'");
            q = lead_neg ? -v : v;
            read_radical();
        } else {
            p = lead_neg ? -v : v;
            // Optional radical summand.
            if (lx.peek().kind == Token::Plus || lx.peek().kind == Token::Minus) {
                bool neg = lx.next().kind == Token::Minus;
                Integer qv = 1;
                if (lx.peek().kind == Token::Literal) {
                    qv = read_signed_int(false);
                    if (lx.peek().kind != Token::Star) lx.fail("expected '*' before sqrt");
                    lx.next();
                }
                if (!(lx.peek().kind == Token::Ident && lx.peek().text == "sqrt"))
                    lx.fail("expected sqrt");
                q = neg ? -qv : qv;
                read_radical();
            }
        }
    }

    if (parenthesized) {
        if (lx.peek().kind != Token::RParen) lx.fail("expected ')'");
        lx.next();
    }
    if (lx.peek().kind == Token::Slash) {
        lx.next();
        r = read_signed_int(true);
    }
    if (lx.peek().kind != Token::End) lx.fail("trailing input in surd");
    if (r < 0) {
        p = -p;
        q = -q;
        r = -r;
    }
    return QuadraticSurd(p, q, d, r);
}

}  // namespace ncw
