#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncw/nctorus.hpp"
#include "ncw/symbolic.hpp"

namespace ncw {

// Charge (n, m) of a Heisenberg module.  m != 0 selects the function-space
// modules E_{n,m}; m = 0 is the free-module case handled by FreeConnection.
struct HeisenbergCharge {
    int64_t n = 0;
    int64_t m = 0;

    HeisenbergCharge(int64_t n_, int64_t m_) : n(n_), m(m_) {
        if (n == 0 && m == 0) throw input_error("charge (0,0) is not allowed");
    }

    int64_t num_classes() const {
        if (m == 0) throw input_error("charge has m = 0; use the free-module connection");
        return m > 0 ? m : -m;
    }
    // mu = m / (n + theta m)
    SymbolicScalar mu() const {
        if (m == 0) throw input_error("mu undefined for m = 0");
        return SymbolicScalar(Polynomial(GaussianRational(m)), dim_poly());
    }
    // translation step of the U1 action: 1/mu = (n + theta m)/m
    SymbolicScalar step() const {
        if (m == 0) throw input_error("step undefined for m = 0");
        return SymbolicScalar(dim_poly(), Polynomial(GaussianRational(m)));
    }
    // n + m theta
    SymbolicScalar dim() const { return SymbolicScalar(dim_poly()); }

private:
    Polynomial dim_poly() const {
        Polynomial p{GaussianRational(n)};
        p += Polynomial::unit_power(Unit::Theta, 1).scaled(GaussianRational(m));
        return p;
    }
};

// Dense polynomial in the real variable x with symbolic coefficients.
class PolyX {
public:
    PolyX() = default;
    PolyX(SymbolicScalar c) {
        coeffs_.push_back(std::move(c));
        trim();
    }
    explicit PolyX(std::vector<SymbolicScalar> cs) : coeffs_(std::move(cs)) { trim(); }

    static PolyX x() { return PolyX({SymbolicScalar(0), SymbolicScalar(1)}); }

    const std::vector<SymbolicScalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    size_t degree_bound() const { return coeffs_.size(); }

    friend PolyX operator+(const PolyX& a, const PolyX& b) {
        PolyX r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), SymbolicScalar(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        r.trim();
        return r;
    }
    friend PolyX operator-(const PolyX& a) {
        PolyX r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend PolyX operator-(const PolyX& a, const PolyX& b) { return a + (-b); }
    friend PolyX operator*(const PolyX& a, const PolyX& b) {
        if (a.is_zero() || b.is_zero()) return {};
        PolyX r;
        r.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1, SymbolicScalar(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        r.trim();
        return r;
    }
    PolyX& operator+=(const PolyX& b) { *this = *this + b; return *this; }

    PolyX scaled(const SymbolicScalar& s) const {
        PolyX r = *this;
        for (auto& c : r.coeffs_) c *= s;
        r.trim();
        return r;
    }
    PolyX derivative() const {
        if (coeffs_.size() <= 1) return {};
        PolyX r;
        r.coeffs_.resize(coeffs_.size() - 1, SymbolicScalar(0));
        for (size_t i = 1; i < coeffs_.size(); ++i)
            r.coeffs_[i - 1] = coeffs_[i] * SymbolicScalar(static_cast<long long>(i));
        r.trim();
        return r;
    }
    // p(x + t), exact binomial expansion.
    PolyX shifted(const SymbolicScalar& t) const {
        PolyX r;
        PolyX xt({t, SymbolicScalar(1)});  // x + t
        PolyX pw(SymbolicScalar(1));
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            r += pw.scaled(coeffs_[i]);
            if (i + 1 < coeffs_.size()) pw = pw * xt;
        }
        return r;
    }
    friend bool operator==(const PolyX& a, const PolyX& b) { return (a - b).is_zero(); }

    std::complex<double> evaluate(std::complex<double> x,
                                  const std::map<Unit, std::complex<double>>& vals) const {
        std::complex<double> r = 0.0;
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i].evaluate(vals);
        return r;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<SymbolicScalar> coeffs_;
};

// One summand p(x) * exp(q2 x^2 + q1 x + q0) of a section.
//
// The additive constant q0 is kept in a normal form that encodes the two
// numeric identities exp(c k) = 1 (k integer) and exp(c theta l) = L^l:
// such monomials are removed from q0 and the lambda power is folded into the
// polynomial part.  This is what makes the right-module law hold as a formal
// identity across the residue-class wraparound.
struct GaussTerm {
    PolyX p;
    SymbolicScalar q2, q1, q0;

    GaussTerm(PolyX poly, SymbolicScalar a2, SymbolicScalar a1, SymbolicScalar a0)
        : p(std::move(poly)), q2(std::move(a2)), q1(std::move(a1)), q0(std::move(a0)) {
        reduce_constant();
    }

    bool is_zero() const { return p.is_zero(); }

    bool same_exponent(const GaussTerm& o) const {
        return q2 == o.q2 && q1 == o.q1 && q0 == o.q0;
    }

    GaussTerm translated(const SymbolicScalar& t) const {
        // substitute x -> x + t
        SymbolicScalar two_t = t * SymbolicScalar(2);
        return GaussTerm(p.shifted(t), q2, q1 + q2 * two_t, q0 + q2 * t * t + q1 * t);
    }

    std::complex<double> evaluate(std::complex<double> x,
                                  const std::map<Unit, std::complex<double>>& vals) const {
        std::complex<double> e =
            q2.evaluate(vals) * x * x + q1.evaluate(vals) * x + q0.evaluate(vals);
        return p.evaluate(x, vals) * std::exp(e);
    }

private:
    // floor of the real part; exp(c k) = exp(c (k - j)) for integer j, and
    // exp(c theta (l + j)) = L^j exp(c theta l).
    static Integer floor_re(const GaussianRational& k) {
        const Rational& r = k.re();
        Integer num = boost::multiprecision::numerator(r);
        Integer den = boost::multiprecision::denominator(r);
        Integer q = num / den;
        if (num < 0 && q * den != num) --q;
        return q;
    }

    void reduce_constant() {
        if (!q0.is_polynomial()) return;
        const Polynomial& body = q0.num();
        Monomial cmono = Monomial::of(Unit::C, 1);
        Monomial ctheta = cmono * Monomial::of(Unit::Theta, 1);
        GaussianRational ck = body.coefficient(cmono);
        GaussianRational cl = body.coefficient(ctheta);
        Polynomial drop;
        int32_t lam_power = 0;
        if (!ck.is_zero()) {
            Integer j = floor_re(ck);
            if (j != 0)
                drop += Polynomial::monomial(cmono, GaussianRational(Rational(j)));
        }
        if (!cl.is_zero()) {
            Integer j = floor_re(cl);
            if (j != 0) {
                drop += Polynomial::monomial(ctheta, GaussianRational(Rational(j)));
                lam_power = static_cast<int32_t>(j.convert_to<long long>());
            }
        }
        if (!drop.is_zero()) {
            q0 = SymbolicScalar(body - drop);
            if (lam_power != 0) p = p.scaled(SymbolicScalar::lambda(lam_power));
        }
    }
};

// Exactly closed model of a section of E_{n,m}: per residue class, a finite
// sum of Gaussian-polynomial terms.  Closed under d/dx, multiplication by x
// and by exp(linear), and translation.
class GaussJet {
public:
    GaussJet() = default;
    explicit GaussJet(const HeisenbergCharge& ch) : classes_(ch.num_classes()) {}

    static GaussJet zero(const HeisenbergCharge& ch) { return GaussJet(ch); }
    // The constant section supported on a single residue class.
    static GaussJet unit_class(const HeisenbergCharge& ch, int64_t alpha) {
        GaussJet f(ch);
        f.add_term(alpha, GaussTerm(PolyX(SymbolicScalar(1)), SymbolicScalar(0),
                                    SymbolicScalar(0), SymbolicScalar(0)));
        return f;
    }

    int64_t num_classes() const { return static_cast<int64_t>(classes_.size()); }
    const std::vector<GaussTerm>& terms(int64_t alpha) const {
        return classes_[normalize_class(alpha)];
    }
    bool is_zero() const {
        for (const auto& cls : classes_)
            if (!cls.empty()) return false;
        return true;
    }

    void add_term(int64_t alpha, GaussTerm t) {
        if (t.is_zero()) return;
        auto& cls = classes_[normalize_class(alpha)];
        for (auto it = cls.begin(); it != cls.end(); ++it) {
            if (it->same_exponent(t)) {
                it->p += t.p;
                if (it->p.is_zero()) cls.erase(it);
                return;
            }
        }
        cls.push_back(std::move(t));
    }

    friend GaussJet operator+(const GaussJet& a, const GaussJet& b) {
        if (a.classes_.size() != b.classes_.size())
            throw input_error("section class-count mismatch");
        GaussJet r = a;
        for (size_t al = 0; al < b.classes_.size(); ++al)
            for (const auto& t : b.classes_[al]) r.add_term(static_cast<int64_t>(al), t);
        return r;
    }
    friend GaussJet operator-(const GaussJet& a) {
        GaussJet r = a;
        for (auto& cls : r.classes_)
            for (auto& t : cls) t.p = -t.p;
        return r;
    }
    friend GaussJet operator-(const GaussJet& a, const GaussJet& b) { return a + (-b); }

    GaussJet scaled(const SymbolicScalar& s) const {
        if (s.is_zero()) {
            GaussJet r;
            r.classes_.assign(classes_.size(), {});
            return r;
        }
        GaussJet r = *this;
        for (auto& cls : r.classes_)
            for (auto& t : cls) t.p = t.p.scaled(s);
        return r;
    }

    friend bool operator==(const GaussJet& a, const GaussJet& b) { return (a - b).is_zero(); }

    std::complex<double> evaluate(std::complex<double> x, int64_t alpha,
                                  const std::map<Unit, std::complex<double>>& vals) const {
        std::complex<double> r = 0.0;
        for (const auto& t : classes_[normalize_class(alpha)]) r += t.evaluate(x, vals);
        return r;
    }

    size_t total_terms() const {
        size_t n = 0;
        for (const auto& cls : classes_) n += cls.size();
        return n;
    }

    // Structural closure check: no zero terms, exponent triples distinct
    // within each class.
    void validate() const {
        for (const auto& cls : classes_)
            for (size_t i = 0; i < cls.size(); ++i) {
                if (cls[i].is_zero()) throw contract_error("section holds a zero term");
                for (size_t j = i + 1; j < cls.size(); ++j)
                    if (cls[i].same_exponent(cls[j]))
                        throw contract_error("section holds unmerged terms");
            }
    }

private:
    size_t normalize_class(int64_t alpha) const {
        auto m = static_cast<int64_t>(classes_.size());
        if (m == 0) throw input_error("section with no residue classes");
        int64_t r = alpha % m;
        if (r < 0) r += m;
        return static_cast<size_t>(r);
    }

    std::vector<std::vector<GaussTerm>> classes_;
};

namespace detail {

// Single right-action steps by U1^{+-1} and U2^{+-1}.
//   (f U1)(x, alpha) = f(x - (n + theta m)/m, alpha - 1)
//   (f U2)(x, alpha) = exp(c (x - alpha n / m)) f(x, alpha)
inline GaussJet act_u1(const GaussJet& f, const HeisenbergCharge& ch, int dir) {
    GaussJet r(ch);
    SymbolicScalar s = ch.step();
    int64_t M = ch.num_classes();
    for (int64_t alpha = 0; alpha < M; ++alpha) {
        // dir=+1: result[alpha] = f[alpha-1](x - s); dir=-1 is the inverse map.
        int64_t src = alpha - dir;
        SymbolicScalar shift = (dir > 0) ? -s : s;
        for (const auto& t : f.terms(src)) r.add_term(alpha, t.translated(shift));
    }
    return r;
}

inline GaussJet act_u2(const GaussJet& f, const HeisenbergCharge& ch, int dir) {
    GaussJet r(ch);
    int64_t M = ch.num_classes();
    SymbolicScalar cunit = SymbolicScalar::c();
    for (int64_t alpha = 0; alpha < M; ++alpha) {
        // phase exponent c(x - alpha n / m), canonical representative alpha in [0, M)
        SymbolicScalar phase0 =
            cunit * SymbolicScalar(Polynomial(GaussianRational(-alpha * ch.n)),
                                   Polynomial(GaussianRational(ch.m)));
        for (const auto& t : f.terms(alpha)) {
            SymbolicScalar q1 = (dir > 0) ? t.q1 + cunit : t.q1 - cunit;
            SymbolicScalar q0 = (dir > 0) ? t.q0 + phase0 : t.q0 - phase0;
            r.add_term(alpha, GaussTerm(t.p, t.q2, q1, q0));
        }
    }
    return r;
}

}  // namespace detail

// Right module action of a torus element, monomials acting by composition in
// normal order and general elements by linearity.
inline GaussJet act(const GaussJet& f, const NCElement& a, const HeisenbergCharge& ch) {
    GaussJet result(ch);
    for (const auto& [key, coeff] : a.coeffs()) {
        GaussJet g = f;
        int64_t m1 = key.first, n1 = key.second;
        for (int64_t k = 0; k < (m1 > 0 ? m1 : -m1); ++k)
            g = detail::act_u1(g, ch, m1 > 0 ? +1 : -1);
        for (int64_t k = 0; k < (n1 > 0 ? n1 : -n1); ++k)
            g = detail::act_u2(g, ch, n1 > 0 ? +1 : -1);
        result = result + g.scaled(coeff);
    }
    result.validate();
    return result;
}

// The holomorphic structure: nabla_z(f) = df/dx + c (tau mu x + z) f.
inline GaussJet nabla_z(const GaussJet& f, const HeisenbergCharge& ch,
                        const SymbolicScalar& zval = SymbolicScalar::z()) {
    SymbolicScalar ctau_mu = SymbolicScalar::c() * SymbolicScalar::tau() * ch.mu();
    SymbolicScalar cz = SymbolicScalar::c() * zval;
    GaussJet r(ch);
    for (int64_t alpha = 0; alpha < ch.num_classes(); ++alpha) {
        for (const auto& t : f.terms(alpha)) {
            // d/dx adds p' + p (2 q2 x + q1); the connection adds p (c tau mu x + c z).
            PolyX mult({t.q1 + cz, t.q2 * SymbolicScalar(2) + ctau_mu});
            PolyX poly = t.p.derivative() + t.p * mult;
            r.add_term(alpha, GaussTerm(std::move(poly), t.q2, t.q1, t.q0));
        }
    }
    r.validate();
    return r;
}

// Leibniz residual nabla_z(f a) - nabla_z(f) a - f delta_tau(a); contract: zero.
inline GaussJet leibniz_residual(const GaussJet& f, const NCElement& a,
                                 const HeisenbergCharge& ch,
                                 const SymbolicScalar& zval = SymbolicScalar::z()) {
    GaussJet lhs = nabla_z(act(f, a, ch), ch, zval);
    GaussJet mid = act(nabla_z(f, ch, zval), a, ch);
    GaussJet rhs = act(f, delta_tau(a), ch);
    return lhs - mid - rhs;
}

}  // namespace ncw
