#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "ncw/error.hpp"

namespace ncw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw input_error("division by zero");
    return Rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

// Element of Q(i), kept exact. Arithmetic never rounds.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long long n) : re_(n) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a) {
        return GaussianRational(-a.re_, -a.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_ == 0 && b.im_ == 0) return GaussianRational(a.re_ * b.re_);
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    GaussianRational inverse() const {
        if (is_zero()) throw input_error("division by zero");
        if (im_ == 0) return GaussianRational(1 / re_);
        Rational n = re_ * re_ + im_ * im_;
        return GaussianRational(re_ / n, -im_ / n);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }
    GaussianRational& operator+=(const GaussianRational& b) { *this = *this + b; return *this; }
    GaussianRational& operator-=(const GaussianRational& b) { *this = *this - b; return *this; }
    GaussianRational& operator*=(const GaussianRational& b) { *this = *this * b; return *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order for use as a map key; not the complex-plane order.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::string to_string(const Rational& r) {
    return r.str();
}

// Prints "3/2", "1/2i", "(3/2 + 1/2i)", "-2i", "0", ...
inline std::string to_string(const GaussianRational& g) {
    auto imag_part = [&](const Rational& im) {
        if (im == 1) return std::string("i");
        if (im == -1) return std::string("-i");
        return to_string(im) + "i";
    };
    if (g.im() == 0) return to_string(g.re());
    if (g.re() == 0) return imag_part(g.im());
    std::string s = "(" + to_string(g.re());
    if (g.im() > 0)
        s += " + " + imag_part(g.im());
    else
        s += " - " + imag_part(-g.im());
    return s + ")";
}

}  // namespace ncw
