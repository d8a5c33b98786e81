#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/rational.hpp"

namespace ncw {

// Formal commuting units of the coefficient field.
//   L   = lambda  (the twist e^{2 pi i theta}, kept formally independent of theta)
//   th  = theta
//   tau = the complex-structure parameter
//   z   = the holomorphic-structure parameter
//   c   = the formal constant 2 pi i
// lambda is Laurent (net integer exponent), the others are polynomial.
enum class Unit : uint8_t { Lambda, Theta, Tau, Z, C };

inline const char* unit_name(Unit u) {
    switch (u) {
        case Unit::Lambda: return "L";
        case Unit::Theta: return "th";
        case Unit::Tau: return "tau";
        case Unit::Z: return "z";
        case Unit::C: return "c";
    }
    return "?";
}

struct Monomial {
    int32_t lam = 0;  // may be negative
    int32_t th = 0;
    int32_t ta = 0;
    int32_t zz = 0;
    int32_t cc = 0;

    bool is_one() const { return lam == 0 && th == 0 && ta == 0 && zz == 0 && cc == 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        return Monomial{a.lam + b.lam, a.th + b.th, a.ta + b.ta, a.zz + b.zz, a.cc + b.cc};
    }
    // Valid only when the quotient stays polynomial in th/tau/z/c.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        return Monomial{a.lam - b.lam, a.th - b.th, a.ta - b.ta, a.zz - b.zz, a.cc - b.cc};
    }
    // b divides a in the Laurent-in-lambda ring.
    bool divides(const Monomial& a) const {
        return th <= a.th && ta <= a.ta && zz <= a.zz && cc <= a.cc;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.lam == b.lam && a.th == b.th && a.ta == b.ta && a.zz == b.zz && a.cc == b.cc;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.th != b.th) return a.th < b.th;
        if (a.ta != b.ta) return a.ta < b.ta;
        if (a.zz != b.zz) return a.zz < b.zz;
        if (a.cc != b.cc) return a.cc < b.cc;
        return a.lam < b.lam;
    }

    int32_t exp(Unit u) const {
        switch (u) {
            case Unit::Lambda: return lam;
            case Unit::Theta: return th;
            case Unit::Tau: return ta;
            case Unit::Z: return zz;
            case Unit::C: return cc;
        }
        return 0;
    }
    static Monomial of(Unit u, int32_t e) {
        Monomial m;
        switch (u) {
            case Unit::Lambda: m.lam = e; break;
            case Unit::Theta: m.th = e; break;
            case Unit::Tau: m.ta = e; break;
            case Unit::Z: m.zz = e; break;
            case Unit::C: m.cc = e; break;
        }
        return m;
    }
};

// Multivariate polynomial over Q(i), Laurent in lambda.
// Terms are kept sorted by monomial with no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Monomial, GaussianRational>;

    Polynomial() = default;
    Polynomial(GaussianRational c) {
        if (!c.is_zero()) terms_.emplace_back(Monomial{}, std::move(c));
    }
    Polynomial(long long n) : Polynomial(GaussianRational(n)) {}
    static Polynomial monomial(Monomial m, GaussianRational c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
        return p;
    }
    static Polynomial unit_power(Unit u, int32_t e) {
        return monomial(Monomial::of(u, e), GaussianRational(1));
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    GaussianRational constant_value() const {
        if (terms_.empty()) return GaussianRational(0);
        return terms_[0].second;  // valid only when is_constant()
    }
    size_t size() const { return terms_.size(); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() && ib != b.terms_.end()) {
            if (ia->first < ib->first) {
                r.terms_.push_back(*ia++);
            } else if (ib->first < ia->first) {
                r.terms_.push_back(*ib++);
            } else {
                GaussianRational c = ia->second + ib->second;
                if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia, ++ib;
            }
        }
        r.terms_.insert(r.terms_.end(), ia, a.terms_.end());
        r.terms_.insert(r.terms_.end(), ib, b.terms_.end());
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::map<Monomial, GaussianRational> acc;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                GaussianRational c = ca * cb;
                if (c.is_zero()) continue;
                auto [it, fresh] = acc.emplace(ma * mb, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        Polynomial r;
        r.terms_.assign(acc.begin(), acc.end());
        return r;
    }
    Polynomial& operator+=(const Polynomial& b) { *this = *this + b; return *this; }
    Polynomial& operator-=(const Polynomial& b) { *this = *this - b; return *this; }
    Polynomial& operator*=(const Polynomial& b) { *this = *this * b; return *this; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial scaled(const GaussianRational& c) const {
        if (c.is_zero()) return {};
        Polynomial r = *this;
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }
    Polynomial times_monomial(const Monomial& m) const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.first = t.first * m;
        return r;
    }

    GaussianRational coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return t.first < k; });
        if (it != terms_.end() && it->first == m) return it->second;
        return GaussianRational(0);
    }

    int32_t min_exp(Unit u) const {
        int32_t m = 0;
        bool first = true;
        for (const auto& t : terms_) {
            int32_t e = t.first.exp(u);
            if (first || e < m) m = e, first = false;
        }
        return m;
    }

    std::complex<double> evaluate(const std::map<Unit, std::complex<double>>& vals) const;

private:
    std::vector<Term> terms_;
};

inline std::complex<double> int_pow(std::complex<double> base, int32_t e) {
    if (e < 0) return 1.0 / int_pow(base, -e);
    std::complex<double> r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline std::complex<double> Polynomial::evaluate(
    const std::map<Unit, std::complex<double>>& vals) const {
    std::string missing;
    for (Unit u : {Unit::Lambda, Unit::Theta, Unit::Tau, Unit::Z, Unit::C}) {
        bool used = false;
        for (const auto& t : terms_)
            if (t.first.exp(u) != 0) used = true;
        if (used && !vals.count(u)) {
            if (!missing.empty()) missing += ", ";
            missing += unit_name(u);
        }
    }
    if (!missing.empty()) throw input_error("unbound units in evaluation: " + missing);
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> v(static_cast<double>(c.re()), static_cast<double>(c.im()));
        if (m.lam) v *= int_pow(vals.at(Unit::Lambda), m.lam);
        if (m.th) v *= int_pow(vals.at(Unit::Theta), m.th);
        if (m.ta) v *= int_pow(vals.at(Unit::Tau), m.ta);
        if (m.zz) v *= int_pow(vals.at(Unit::Z), m.zz);
        if (m.cc) v *= int_pow(vals.at(Unit::C), m.cc);
        sum += v;
    }
    return sum;
}

// Exact division in the Laurent ring: returns num/den when den divides num.
inline std::optional<Polynomial> try_divide(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw input_error("division by zero");
    if (num.is_zero()) return Polynomial{};
    // Clear lambda so ordinary multivariate long division applies.
    int32_t shift_n = num.min_exp(Unit::Lambda);
    int32_t shift_d = den.min_exp(Unit::Lambda);
    Polynomial n = num.times_monomial(Monomial::of(Unit::Lambda, -shift_n));
    Polynomial d = den.times_monomial(Monomial::of(Unit::Lambda, -shift_d));

    const auto& dl = d.terms().back();  // leading term in the storage order
    Polynomial q;
    Polynomial r = n;
    while (!r.is_zero()) {
        const auto& rl = r.terms().back();
        if (!(dl.first.divides(rl.first)) || dl.first.lam > rl.first.lam) return std::nullopt;
        Monomial qm = rl.first / dl.first;
        GaussianRational qc = rl.second / dl.second;
        Polynomial qt = Polynomial::monomial(qm, qc);
        q += qt;
        r -= qt * d;
    }
    return q.times_monomial(Monomial::of(Unit::Lambda, shift_n - shift_d));
}

// Exact rational function over Q(i) in the formal units.
// Fractions are normalized lazily: common monomial content and the leading
// denominator coefficient are stripped, and a full num/den cancellation is
// attempted by exact division. Equality is decided by cross-multiplication,
// so unreduced representatives still compare correctly.
class SymbolicScalar {
public:
    SymbolicScalar() : num_(), den_(GaussianRational(1)) {}
    SymbolicScalar(long long n) : num_(GaussianRational(n)), den_(GaussianRational(1)) {}
    SymbolicScalar(GaussianRational c) : num_(std::move(c)), den_(GaussianRational(1)) {}
    SymbolicScalar(Polynomial p) : num_(std::move(p)), den_(GaussianRational(1)) {}
    SymbolicScalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw input_error("division by zero");
        normalize();
    }

    static SymbolicScalar unit(Unit u, int32_t e = 1) {
        return SymbolicScalar(Polynomial::unit_power(u, e));
    }
    static SymbolicScalar lambda(int32_t e = 1) { return unit(Unit::Lambda, e); }
    static SymbolicScalar theta() { return unit(Unit::Theta); }
    static SymbolicScalar tau() { return unit(Unit::Tau); }
    static SymbolicScalar z() { return unit(Unit::Z); }
    static SymbolicScalar c() { return unit(Unit::C); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend SymbolicScalar operator+(const SymbolicScalar& a, const SymbolicScalar& b) {
        if (a.den_ == b.den_) return SymbolicScalar(a.num_ + b.num_, a.den_);
        return SymbolicScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend SymbolicScalar operator-(const SymbolicScalar& a) {
        SymbolicScalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend SymbolicScalar operator-(const SymbolicScalar& a, const SymbolicScalar& b) {
        return a + (-b);
    }
    friend SymbolicScalar operator*(const SymbolicScalar& a, const SymbolicScalar& b) {
        return SymbolicScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    SymbolicScalar inverse() const {
        if (is_zero()) throw input_error("division by zero");
        return SymbolicScalar(den_, num_);
    }
    friend SymbolicScalar operator/(const SymbolicScalar& a, const SymbolicScalar& b) {
        return a * b.inverse();
    }
    SymbolicScalar& operator+=(const SymbolicScalar& b) { *this = *this + b; return *this; }
    SymbolicScalar& operator-=(const SymbolicScalar& b) { *this = *this - b; return *this; }
    SymbolicScalar& operator*=(const SymbolicScalar& b) { *this = *this * b; return *this; }

    // a/b == c/d  iff  ad - cb == 0, exactly.
    friend bool operator==(const SymbolicScalar& a, const SymbolicScalar& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const SymbolicScalar& a, const SymbolicScalar& b) { return !(a == b); }

    bool is_one() const { return *this == SymbolicScalar(1); }

    std::complex<double> evaluate(const std::map<Unit, std::complex<double>>& vals) const {
        std::complex<double> n = num_.evaluate(vals);
        std::complex<double> d = den_.evaluate(vals);
        if (std::abs(d) < 1e-300) throw input_error("denominator evaluates to zero");
        return n / d;
    }

    // Exact substitution of a unit by a scalar value.
    SymbolicScalar substitute(Unit u, const SymbolicScalar& value) const;

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial(GaussianRational(1));
            return;
        }
        // Strip common monomial content (lambda content is shared verbatim,
        // the polynomial units only up to their common minimum).
        Monomial g;
        g.lam = std::min(num_.min_exp(Unit::Lambda), den_.min_exp(Unit::Lambda));
        g.th = std::min(num_.min_exp(Unit::Theta), den_.min_exp(Unit::Theta));
        g.ta = std::min(num_.min_exp(Unit::Tau), den_.min_exp(Unit::Tau));
        g.zz = std::min(num_.min_exp(Unit::Z), den_.min_exp(Unit::Z));
        g.cc = std::min(num_.min_exp(Unit::C), den_.min_exp(Unit::C));
        if (!g.is_one()) {
            Monomial inv = Monomial{} / g;
            num_ = num_.times_monomial(inv);
            den_ = den_.times_monomial(inv);
        }
        if (!den_.is_constant()) {
            if (auto q = try_divide(num_, den_)) {
                num_ = std::move(*q);
                den_ = Polynomial(GaussianRational(1));
            }
        }
        // Make the denominator's leading coefficient 1.
        const GaussianRational& lead = den_.terms().back().second;
        if (!lead.is_one()) {
            GaussianRational inv = lead.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Polynomial num_;
    Polynomial den_;
};

inline SymbolicScalar power(const SymbolicScalar& b, int32_t e) {
    if (e == 0) return SymbolicScalar(1);
    SymbolicScalar base = e < 0 ? b.inverse() : b;
    int32_t n = e < 0 ? -e : e;
    SymbolicScalar r(1);
    for (int32_t k = 0; k < n; ++k) r *= base;
    return r;
}

inline SymbolicScalar SymbolicScalar::substitute(Unit u, const SymbolicScalar& value) const {
    auto subst_poly = [&](const Polynomial& p) {
        SymbolicScalar acc(0);
        for (const auto& [m, c] : p.terms()) {
            int32_t e = m.exp(u);
            Monomial rest = m * Monomial::of(u, -e);
            acc += SymbolicScalar(Polynomial::monomial(rest, c)) * power(value, e);
        }
        return acc;
    };
    return subst_poly(num_) / subst_poly(den_);
}

}  // namespace ncw
