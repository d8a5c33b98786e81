#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/heisenberg.hpp"
#include "ncw/surd.hpp"

namespace ncw {

// Numerical class (rank, degree) of a coherent sheaf on the elliptic curve.
// Torsion sheaves have r = 0, d > 0 and slope +infinity.
struct Charge {
    int64_t r = 0;
    int64_t d = 0;

    Charge(int64_t r_, int64_t d_) : r(r_), d(d_) {
        if (r < 0) throw input_error("charge: rank must be nonnegative");
        if (r == 0 && d <= 0) throw input_error("charge: torsion requires d > 0");
    }
    bool is_torsion() const { return r == 0; }

    friend bool operator==(const Charge& a, const Charge& b) { return a.r == b.r && a.d == b.d; }
    friend bool operator<(const Charge& a, const Charge& b) {
        return std::pair(a.r, a.d) < std::pair(b.r, b.d);
    }
};

// Euler form chi(a, b) = r_a d_b - d_a r_b (Riemann-Roch, trivial canonical).
inline int64_t euler_form(const Charge& a, const Charge& b) {
    return a.r * b.d - a.d * b.r;
}

// A stable sheaf: coprime charge plus a label distinguishing non-isomorphic
// stable sheaves of the same charge.
struct StablePiece {
    Charge charge;
    std::string label;

    StablePiece(Charge c, std::string lab = "") : charge(c), label(std::move(lab)) {
        int64_t g = std::gcd(charge.r, charge.d < 0 ? -charge.d : charge.d);
        if (charge.is_torsion()) {
            if (charge.d != 1) throw input_error("stable torsion piece must have d = 1");
        } else if (g != 1) {
            throw input_error("stable piece requires gcd(r, d) = 1");
        }
    }
    friend bool operator==(const StablePiece& a, const StablePiece& b) {
        return a.charge == b.charge && a.label == b.label;
    }
    friend bool operator<(const StablePiece& a, const StablePiece& b) {
        if (!(a.charge == b.charge)) return a.charge < b.charge;
        return a.label < b.label;
    }
};

// The slope parameter: an exact quadratic irrational, so slope comparisons
// never tie.
struct Theta {
    QuadraticSurd value;

    explicit Theta(QuadraticSurd v) : value(std::move(v)) {
        if (!value.is_irrational()) throw input_error("theta must be irrational");
    }
};

enum class SlopeClass { Above, Below };  // Coh_{>theta} | Coh_{<=theta}

inline const char* to_string(SlopeClass s) {
    return s == SlopeClass::Above ? "Coh_{>theta}" : "Coh_{<=theta}";
}

inline SlopeClass classify(const Charge& c, const Theta& theta) {
    if (c.is_torsion()) return SlopeClass::Above;  // slope +infinity
    Rational slope(Integer(c.d), Integer(c.r));
    Ordering o = theta.value.compare(slope);
    // theta < slope  <=>  slope > theta; equality cannot happen.
    if (o == Ordering::Equal) throw contract_error("irrational theta compared equal to a slope");
    return o == Ordering::Less ? SlopeClass::Above : SlopeClass::Below;
}

// Hom/Ext^1 dimensions between stable pieces.  End of a stable sheaf is
// one-dimensional and Ext^1(E,E) ~ H^1(O) is too; distinct stable pieces see
// only the Euler form.
inline std::pair<int64_t, int64_t> hom_dims(const StablePiece& a, const StablePiece& b) {
    if (a == b) return {1, 1};
    int64_t chi = euler_form(a.charge, b.charge);
    return {chi > 0 ? chi : 0, chi < 0 ? -chi : 0};
}

// Formal object of D^b(X): a direct sum of shifted stable pieces.  A summand
// (k, piece, mult) models piece[-k], i.e. cohomology concentrated in degree k.
class FormalObject {
public:
    struct Summand {
        int64_t k;
        StablePiece piece;
        int64_t mult;
    };

    FormalObject() = default;

    static FormalObject of(int64_t k, StablePiece piece, int64_t mult = 1) {
        FormalObject x;
        x.add(k, std::move(piece), mult);
        return x;
    }

    void add(int64_t k, StablePiece piece, int64_t mult = 1) {
        if (mult <= 0) throw input_error("summand multiplicity must be positive");
        for (auto& s : summands_) {
            if (s.k == k && s.piece == piece) {
                s.mult += mult;
                return;
            }
        }
        summands_.push_back({k, std::move(piece), mult});
        sort();
    }

    const std::vector<Summand>& summands() const { return summands_; }
    bool empty() const { return summands_.empty(); }

    FormalObject shifted(int64_t by) const {
        // X[s] places a degree-k piece in degree k - s.
        FormalObject r;
        for (const auto& s : summands_) r.add(s.k - by, s.piece, s.mult);
        return r;
    }

    friend FormalObject operator+(const FormalObject& a, const FormalObject& b) {
        FormalObject r = a;
        for (const auto& s : b.summands_) r.add(s.k, s.piece, s.mult);
        return r;
    }

    friend bool operator==(const FormalObject& a, const FormalObject& b) {
        return a.summands_ == b.summands_;
    }

private:
    void sort() {
        std::sort(summands_.begin(), summands_.end(), [](const Summand& x, const Summand& y) {
            if (x.k != y.k) return x.k < y.k;
            if (!(x.piece == y.piece)) return x.piece < y.piece;
            return false;
        });
    }
    std::vector<Summand> summands_;
};

inline bool operator==(const FormalObject::Summand& a, const FormalObject::Summand& b) {
    return a.k == b.k && a.piece == b.piece && a.mult == b.mult;
}

// Truncation triangle of the slope t-structure, split in this model:
// X0 collects degree < 0 plus degree-0 pieces above theta, X1 the rest.
struct Truncation {
    FormalObject below;  // X0 in D^{theta,<=0}
    FormalObject above;  // X1 in D^{theta,>=1}
};

inline Truncation truncate(const FormalObject& x, const Theta& theta, int64_t level = 0) {
    Truncation t;
    for (const auto& s : x.summands()) {
        bool lower = s.k < level ||
                     (s.k == level && classify(s.piece.charge, theta) == SlopeClass::Above);
        (lower ? t.below : t.above).add(s.k, s.piece, s.mult);
    }
    return t;
}

inline bool in_lower_aisle(const FormalObject& x, const Theta& theta, int64_t level = 0) {
    return truncate(x, theta, level).above.empty();
}
inline bool in_upper_aisle(const FormalObject& x, const Theta& theta, int64_t level = 0) {
    return truncate(x, theta, level).below.empty();
}

// Heart membership: degree-0 pieces above theta or degree -1 pieces at or
// below theta (the tilt of the torsion pair).
inline bool heart_member(const FormalObject& x, const Theta& theta) {
    for (const auto& s : x.summands()) {
        SlopeClass cls = classify(s.piece.charge, theta);
        bool ok = (s.k == 0 && cls == SlopeClass::Above) ||
                  (s.k == -1 && cls == SlopeClass::Below);
        if (!ok) return false;
    }
    return true;
}

// K0 class: alternating sum of charges.
inline std::pair<int64_t, int64_t> k0_class(const FormalObject& x) {
    int64_t r = 0, d = 0;
    for (const auto& s : x.summands()) {
        int64_t sign = (s.k % 2 == 0) ? 1 : -1;
        r += sign * s.mult * s.piece.charge.r;
        d += sign * s.mult * s.piece.charge.d;
    }
    return {r, d};
}

struct SplittingReport {
    std::pair<int64_t, int64_t> k0_total;
    std::pair<int64_t, int64_t> k0_below;
    std::pair<int64_t, int64_t> k0_above;
    bool k0_additive = false;
    bool summands_partitioned = false;
    bool ok() const { return k0_additive && summands_partitioned; }
};

// K0-level splitting along the truncation: [X] = [X0] + [X1] and the summand
// multiset is partitioned exactly.
inline SplittingReport splitting_check(const FormalObject& x, const Theta& theta) {
    Truncation t = truncate(x, theta);
    SplittingReport rep;
    rep.k0_total = k0_class(x);
    rep.k0_below = k0_class(t.below);
    rep.k0_above = k0_class(t.above);
    rep.k0_additive =
        rep.k0_total.first == rep.k0_below.first + rep.k0_above.first &&
        rep.k0_total.second == rep.k0_below.second + rep.k0_above.second;
    rep.summands_partitioned = (t.below + t.above == x);
    return rep;
}

// Total Hom dimension between formal objects.  A summand in degree i is
// P[-i], so Hom(P[-i], Q[-j]) = Ext^{i-j}(P, Q): hom at offset 0, Ext^1 at
// offset 1, zero otherwise.
inline int64_t hom_total(const FormalObject& x, const FormalObject& y) {
    int64_t total = 0;
    for (const auto& a : x.summands())
        for (const auto& b : y.summands()) {
            int64_t off = a.k - b.k;
            if (off != 0 && off != 1) continue;
            auto [h, e] = hom_dims(a.piece, b.piece);
            total += a.mult * b.mult * (off == 0 ? h : e);
        }
    return total;
}

struct HomVanishingReport {
    int64_t hom_offset0 = 0;      // contributions the axiom forces to vanish
    int64_t ext1_boundary = 0;    // degree-offset-1 contributions, reported
    bool vanishes() const { return hom_offset0 == 0; }
};

// Axiom (ii) of the t-structure in the split model: for X in D^{theta,<=0}
// and Y in D^{theta,>=1}, Hom(X, Y) = 0.  Offset-0 contributions vanish by
// the slope comparison; offset-1 (Ext^1) contributions cannot occur between
// valid members because the aisles only meet at degree 0.  Both totals are
// reported.
inline HomVanishingReport hom_vanishing_check(const FormalObject& x, const FormalObject& y,
                                              const Theta& theta) {
    if (!in_lower_aisle(x, theta))
        throw input_error("hom_vanishing_check: X is not in D^{theta,<=0}");
    if (!in_upper_aisle(y, theta))
        throw input_error("hom_vanishing_check: Y is not in D^{theta,>=1}");
    HomVanishingReport rep;
    for (const auto& a : x.summands())
        for (const auto& b : y.summands()) {
            int64_t off = a.k - b.k;
            if (off != 0 && off != 1) continue;
            auto [h, e] = hom_dims(a.piece, b.piece);
            if (off == 0) rep.hom_offset0 += a.mult * b.mult * h;
            else rep.ext1_boundary += a.mult * b.mult * e;
        }
    return rep;
}

// Truncation adjunction at level n: for X in C^{<= n},
// dim Hom(X, tau^{<= n} Y) = dim Hom(X, Y).
inline bool truncation_adjunction_check(const FormalObject& x, const FormalObject& y,
                                        int64_t n, const Theta& theta) {
    if (!in_lower_aisle(x, theta, n))
        throw input_error("truncation_adjunction_check: X is not in C^{<=n}");
    FormalObject y0 = truncate(y, theta, n).below;
    return hom_total(x, y0) == hom_total(x, y);
}

// Dictionary from heart pieces to Heisenberg charges:
//   degree  0, slope > theta:  (n, m) = (d, -r)
//   degree -1, slope <= theta: (n, m) = (-d, r)
// In both cases n + m theta > 0, verified exactly.
inline HeisenbergCharge charge_to_heisenberg(int64_t k, const StablePiece& piece,
                                             const Theta& theta) {
    if (!heart_member(FormalObject::of(k, piece), theta))
        throw input_error("charge_to_heisenberg: piece is not in the heart");
    int64_t n, m;
    if (k == 0) {
        n = piece.charge.d;
        m = -piece.charge.r;
    } else {
        n = -piece.charge.d;
        m = piece.charge.r;
    }
    // dim = n + m theta = (n r_theta + m (p + q sqrt(D)))/r_theta > 0
    const QuadraticSurd& th = theta.value;
    QuadraticSurd dim(Integer(n) * th.r() + Integer(m) * th.p(), Integer(m) * th.q(), th.d(),
                      th.r());
    if (dim.compare(Rational(0)) != Ordering::Greater)
        throw contract_error("charge_to_heisenberg: dimension n + m theta is not positive");
    return HeisenbergCharge(n, m);
}

}  // namespace ncw
