#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "ncw/scalar_parse.hpp"
#include "ncw/symbolic.hpp"

namespace ncw {

// Finitely supported element of the smooth noncommutative torus algebra,
//   sum of a_{m,n} U1^m U2^n
// over the symbolic scalar field.  The Schwartz decay condition is replaced
// by finite support; every identity verified here is algebraic and holds on
// this dense subalgebra.
class NCElement {
public:
    // (m, n) exponent pair of the normally ordered monomial U1^m U2^n.
    using Key = std::pair<int64_t, int64_t>;

    NCElement() = default;
    NCElement(SymbolicScalar s) { add_term(0, 0, std::move(s)); }
    NCElement(long long n) : NCElement(SymbolicScalar(n)) {}

    static NCElement monomial(int64_t m, int64_t n, SymbolicScalar coeff = SymbolicScalar(1)) {
        NCElement e;
        e.add_term(m, n, std::move(coeff));
        return e;
    }
    static NCElement u1(int64_t m = 1) { return monomial(m, 0); }
    static NCElement u2(int64_t n = 1) { return monomial(0, n); }

    const std::map<Key, SymbolicScalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    size_t support_size() const { return coeffs_.size(); }

    SymbolicScalar coefficient(int64_t m, int64_t n) const {
        auto it = coeffs_.find({m, n});
        return it == coeffs_.end() ? SymbolicScalar() : it->second;
    }

    void add_term(int64_t m, int64_t n, SymbolicScalar c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs_.try_emplace(Key{m, n}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend NCElement operator+(const NCElement& a, const NCElement& b) {
        NCElement r = a;
        for (const auto& [k, c] : b.coeffs_) r.add_term(k.first, k.second, c);
        return r;
    }
    friend NCElement operator-(const NCElement& a) {
        NCElement r = a;
        for (auto& [k, c] : r.coeffs_) c = -c;
        return r;
    }
    friend NCElement operator-(const NCElement& a, const NCElement& b) { return a + (-b); }
    NCElement& operator+=(const NCElement& b) { *this = *this + b; return *this; }
    NCElement& operator-=(const NCElement& b) { *this = *this - b; return *this; }

    NCElement scaled(const SymbolicScalar& s) const {
        NCElement r;
        for (const auto& [k, c] : coeffs_) r.add_term(k.first, k.second, c * s);
        return r;
    }

    friend bool operator==(const NCElement& a, const NCElement& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const NCElement& a, const NCElement& b) { return !(a == b); }

private:
    std::map<Key, SymbolicScalar> coeffs_;
};

// Product in A_theta.  The defining relation U1 U2 = L U2 U1 gives
// U2 U1 = L^-1 U1 U2, so normal-ordering U1^a U2^b * U1^c U2^d moves each of
// the b U2 factors past each of the c U1 factors, one adjacent swap at a
// time, for a total twist of L^{-bc}:
//   U1^a U2^b U1^c U2^d = L^{-bc} U1^{a+c} U2^{b+d}.
// The swap count is re-verified by a unit test that performs single
// adjacent transpositions.
inline NCElement nc_mul(const NCElement& a, const NCElement& b) {
    NCElement r;
    for (const auto& [ka, ca] : a.coeffs())
        for (const auto& [kb, cb] : b.coeffs()) {
            int64_t twist = -ka.second * kb.first;
            SymbolicScalar coeff = ca * cb;
            if (twist != 0) coeff *= SymbolicScalar::lambda(static_cast<int32_t>(twist));
            r.add_term(ka.first + kb.first, ka.second + kb.second, coeff);
        }
    return r;
}

inline NCElement operator*(const NCElement& a, const NCElement& b) { return nc_mul(a, b); }

inline NCElement power(const NCElement& a, int32_t e) {
    if (e == 0) return NCElement(1);
    if (e < 0) {
        // Only monomials are invertible here:
        // (U1^m U2^n)^-1 = L^{-mn} U1^-m U2^-n.
        if (a.support_size() != 1) throw input_error("cannot invert a non-monomial torus element");
        const auto& [k, c] = *a.coeffs().begin();
        NCElement inv = NCElement::monomial(
            -k.first, -k.second,
            c.inverse() * SymbolicScalar::lambda(static_cast<int32_t>(-k.first * k.second)));
        return power(inv, -e);
    }
    NCElement r(1);
    for (int32_t i = 0; i < e; ++i) r = nc_mul(r, a);
    return r;
}

inline NCElement operator/(const NCElement& a, const NCElement& b) {
    return nc_mul(a, power(b, -1));
}

// The complex-structure derivation: delta_tau(U1^m U2^n) = c(m tau + n) U1^m U2^n,
// extended linearly.  On generators this reads delta_tau(U1) = c tau U1 and
// delta_tau(U2) = c U2, the unique derivation of A_theta with those scalar
// multiples.
inline NCElement delta_tau(const NCElement& a) {
    NCElement r;
    for (const auto& [k, c] : a.coeffs()) {
        SymbolicScalar factor =
            SymbolicScalar::c() * (SymbolicScalar(k.first) * SymbolicScalar::tau() +
                                   SymbolicScalar(k.second));
        r.add_term(k.first, k.second, c * factor);
    }
    return r;
}

// Canonical trace: the coefficient at the lattice origin.
inline SymbolicScalar nc_trace(const NCElement& a) {
    return a.coefficient(0, 0);
}

// Leibniz residual delta(ab) - delta(a) b - a delta(b); identically zero.
inline NCElement derivation_check(const NCElement& a, const NCElement& b) {
    NCElement ab = nc_mul(a, b);
    return delta_tau(ab) - nc_mul(delta_tau(a), b) - nc_mul(a, delta_tau(b));
}

// Substitute a scalar value for one of the formal units in every coefficient.
inline NCElement substitute_unit(const NCElement& e, Unit u, const SymbolicScalar& value) {
    NCElement r;
    for (const auto& [k, c] : e.coeffs()) r.add_term(k.first, k.second, c.substitute(u, value));
    return r;
}

// Parses torus-element expressions such as "U1^2*U2^-1 + (1/2)*U2".
inline NCElement parse_nc(std::string_view text) {
    detail::Lexer lx(text);
    auto atom = [](detail::Lexer& l) -> NCElement {
        const detail::Token& t = l.peek();
        if (t.kind == detail::Token::Literal) return NCElement(SymbolicScalar(l.next().value));
        if (t.kind == detail::Token::Ident) {
            if (t.text == "U1") {
                l.next();
                return NCElement::u1();
            }
            if (t.text == "U2") {
                l.next();
                return NCElement::u2();
            }
            if (t.text == "i") {
                l.next();
                return NCElement(SymbolicScalar(GaussianRational::i()));
            }
            if (auto u = unit_from_name(t.text)) {
                l.next();
                return NCElement(SymbolicScalar::unit(*u));
            }
            l.fail("unknown symbol '" + t.text + "'");
        }
        l.fail("expected a value");
    };
    NCElement r = detail::parse_expression<NCElement>(lx, atom);
    if (lx.peek().kind != detail::Token::End) lx.fail("trailing input");
    return r;
}

inline std::string to_string(const NCElement& e) {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : e.coeffs()) {
        if (!first) s += " + ";
        first = false;
        std::string mono;
        if (k.first != 0) {
            mono += "U1";
            if (k.first != 1) mono += "^" + std::to_string(k.first);
        }
        if (k.second != 0) {
            if (!mono.empty()) mono += "*";
            mono += "U2";
            if (k.second != 1) mono += "^" + std::to_string(k.second);
        }
        std::string coeff = to_string(c);
        if (mono.empty()) {
            s += coeff;
        } else if (c.is_one()) {
            s += mono;
        } else {
            // a sum needs parentheses before the monomial
            if (c.is_polynomial() && c.num().size() > 1) coeff = "(" + coeff + ")";
            s += coeff + " * " + mono;
        }
    }
    return s;
}

// Coefficientwise numeric evaluation used by cross-checks; lambda, theta and
// c must be assigned consistently by the caller.
inline std::map<std::pair<int64_t, int64_t>, std::complex<double>> evaluate_coeffs(
    const NCElement& e, const std::map<Unit, std::complex<double>>& vals) {
    std::map<std::pair<int64_t, int64_t>, std::complex<double>> r;
    for (const auto& [k, c] : e.coeffs()) r[k] = c.evaluate(vals);
    return r;
}

}  // namespace ncw
