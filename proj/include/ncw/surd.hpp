#pragma once

#include <cstdint>
#include <string>

#include "ncw/error.hpp"
#include "ncw/rational.hpp"

namespace ncw {

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "<";
        case Ordering::Equal: return "=";
        case Ordering::Greater: return ">";
    }
    return "?";
}

// Value (p + q*sqrt(D))/r with integer p, q, r > 0 and D > 0 squarefree.
// All comparisons are done with integer arithmetic only.
class QuadraticSurd {
public:
    QuadraticSurd(Integer p, Integer q, Integer D, Integer r)
        : p_(std::move(p)), q_(std::move(q)), d_(std::move(D)), r_(std::move(r)) {
        if (r_ <= 0) throw input_error("surd: r must be positive");
        if (d_ <= 0) throw input_error("surd: D must be positive");
        if (!squarefree(d_)) throw input_error("surd: D must be squarefree");
    }

    const Integer& p() const { return p_; }
    const Integer& q() const { return q_; }
    const Integer& d() const { return d_; }
    const Integer& r() const { return r_; }

    bool is_rational() const { return q_ == 0 || d_ == 1; }
    bool is_irrational() const { return !is_rational(); }

    // Exact sign of (p + q sqrt(D))/r - y.
    Ordering compare(const Rational& y) const {
        // (p + q sqrt(D))/r - a/b  has the sign of  X + Y sqrt(D),
        // X = p b - a r, Y = q b, with b > 0 normalized.
        Integer a = boost::multiprecision::numerator(y);
        Integer b = boost::multiprecision::denominator(y);
        Integer x = p_ * b - a * r_;
        Integer yq = q_ * b;
        int s = sign_of_x_plus_y_sqrt_d(x, yq, d_);
        if (s < 0) return Ordering::Less;
        if (s > 0) return Ordering::Greater;
        return Ordering::Equal;
    }

    Ordering compare(const QuadraticSurd& o) const {
        if (o.d_ != d_ && q_ != 0 && o.q_ != 0)
            throw input_error("surd: comparison across different radicals is not supported");
        // (p1 + q1 s)/r1 - (p2 + q2 s)/r2, common radical s = sqrt(D).
        Integer D = (q_ != 0) ? d_ : o.d_;
        Integer x = p_ * o.r_ - o.p_ * r_;
        Integer y = q_ * o.r_ - o.q_ * r_;
        int s = sign_of_x_plus_y_sqrt_d(x, y, D);
        if (s < 0) return Ordering::Less;
        if (s > 0) return Ordering::Greater;
        return Ordering::Equal;
    }

    double to_double() const {
        return (static_cast<double>(p_) +
                static_cast<double>(q_) * std::sqrt(static_cast<double>(d_))) /
               static_cast<double>(r_);
    }

    friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
        return a.compare(b) == Ordering::Equal;
    }

private:
    static bool squarefree(const Integer& d) {
        Integer n = d;
        for (Integer f = 2; f * f <= n; ++f) {
            if (n % f == 0) {
                n /= f;
                if (n % f == 0) return false;
            }
        }
        return true;
    }

    // Sign of X + Y sqrt(D), D > 0 not a perfect square unless Y = 0.
    static int sign_of_x_plus_y_sqrt_d(const Integer& x, const Integer& y, const Integer& d) {
        int sx = x.sign(), sy = y.sign();
        if (sy == 0) return sx;
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        // Opposite signs: compare X^2 with Y^2 D.
        Integer lhs = x * x, rhs = y * y * d;
        if (lhs == rhs) return 0;  // only possible when sqrt(D) is rational
        bool x_dominates = lhs > rhs;
        return x_dominates ? sx : sy;
    }

    Integer p_, q_, d_, r_;
};

inline Ordering surd_compare(const QuadraticSurd& x, const Rational& y) {
    return x.compare(y);
}

inline std::string to_string(const QuadraticSurd& s) {
    return "(" + s.p().str() + " + " + s.q().str() + "*sqrt(" + s.d().str() + "))/" +
           s.r().str();
}

}  // namespace ncw
