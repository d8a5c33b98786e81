#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/rational.hpp"

namespace ncw {

// Sparse vector: entries sorted by index, no zeros.
template <typename F>
using SparseVec = std::vector<std::pair<int64_t, F>>;

struct fast_field_overflow : std::runtime_error {
    fast_field_overflow() : std::runtime_error("int64 rational overflow") {}
};

// Rational on int64 with overflow detection.  Ranks are first attempted in
// this field and recomputed over exact big rationals when it throws, so the
// result is always exact.
class CheckedRational {
public:
    CheckedRational() = default;
    CheckedRational(long long n) : num_(n) {}
    CheckedRational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend CheckedRational operator+(const CheckedRational& a, const CheckedRational& b) {
        return CheckedRational(add_mul(mul(a.num_, b.den_), mul(b.num_, a.den_)),
                               mul(a.den_, b.den_), 0);
    }
    friend CheckedRational operator-(const CheckedRational& a) {
        return CheckedRational(-a.num_, a.den_, 0);
    }
    friend CheckedRational operator-(const CheckedRational& a, const CheckedRational& b) {
        return a + (-b);
    }
    friend CheckedRational operator*(const CheckedRational& a, const CheckedRational& b) {
        return CheckedRational(mul(a.num_, b.num_), mul(a.den_, b.den_), 0);
    }
    friend CheckedRational operator/(const CheckedRational& a, const CheckedRational& b) {
        if (b.num_ == 0) throw input_error("division by zero");
        return CheckedRational(mul(a.num_, b.den_), mul(a.den_, b.num_), 0);
    }
    CheckedRational& operator+=(const CheckedRational& b) { *this = *this + b; return *this; }
    friend bool operator==(const CheckedRational& a, const CheckedRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    CheckedRational(long long n, long long d, int) : num_(n), den_(d) { normalize(); }

    static long long mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw fast_field_overflow();
        return r;
    }
    static long long add_mul(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw fast_field_overflow();
        return r;
    }
    void normalize() {
        if (den_ == 0) throw input_error("division by zero");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            if (num_ == INT64_MIN || den_ == INT64_MIN) throw fast_field_overflow();
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    long long num_ = 0;
    long long den_ = 1;
};

template <typename F>
void sv_add_scaled(SparseVec<F>& out, const SparseVec<F>& a, const F& c, const SparseVec<F>& b) {
    // out = a + c*b
    out.clear();
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            out.push_back(*ia++);
        } else if (ib->first < ia->first) {
            F v = c * ib->second;
            if (!(v == F(0))) out.emplace_back(ib->first, std::move(v));
            ++ib;
        } else {
            F v = ia->second + c * ib->second;
            if (!(v == F(0))) out.emplace_back(ia->first, std::move(v));
            ++ia, ++ib;
        }
    }
    out.insert(out.end(), ia, a.end());
    for (; ib != b.end(); ++ib) {
        F v = c * ib->second;
        if (!(v == F(0))) out.emplace_back(ib->first, std::move(v));
    }
}

template <typename F>
void sv_accumulate(std::unordered_map<int64_t, F>& acc, const F& c, const SparseVec<F>& v) {
    for (const auto& [i, x] : v) {
        auto it = acc.find(i);
        if (it == acc.end()) {
            F t = c * x;
            if (!(t == F(0))) acc.emplace(i, std::move(t));
        } else {
            it->second += c * x;
            if (it->second == F(0)) acc.erase(it);
        }
    }
}

template <typename F>
SparseVec<F> sv_from_accumulator(std::unordered_map<int64_t, F>& acc) {
    SparseVec<F> v(acc.begin(), acc.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    acc.clear();
    return v;
}

// Incremental row-echelon accumulator over a field.  Columns are inserted one
// at a time; pivot rows are normalized to leading coefficient 1 and kept
// sparse.  Deterministic for a fixed insertion order.
template <typename F>
class Echelon {
public:
    // Reduces v against the current pivots; if a nonzero residual remains it
    // becomes a new pivot.  Returns true when the rank grew.
    bool insert(SparseVec<F> v) {
        SparseVec<F> tmp;
        while (!v.empty()) {
            int64_t lead = v.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                normalize(v);
                pivots_.emplace(lead, std::move(v));
                return true;
            }
            F c = -v.front().second;
            sv_add_scaled(tmp, v, c, it->second);
            v.swap(tmp);
        }
        return false;
    }

    // Reduces v without inserting; returns the residual.
    SparseVec<F> reduce(SparseVec<F> v) const {
        SparseVec<F> tmp;
        while (!v.empty()) {
            auto it = pivots_.find(v.front().first);
            if (it == pivots_.end()) return v;
            F c = -v.front().second;
            sv_add_scaled(tmp, v, c, it->second);
            v.swap(tmp);
        }
        return v;
    }

    size_t rank() const { return pivots_.size(); }

    size_t stored_entries() const {
        size_t n = 0;
        for (const auto& [k, row] : pivots_) n += row.size();
        return n;
    }

private:
    void normalize(SparseVec<F>& v) {
        F inv = F(1) / v.front().second;
        if (inv == F(1)) return;
        for (auto& [i, x] : v) x = x * inv;
    }
    std::unordered_map<int64_t, SparseVec<F>> pivots_;
};

// Echelon that also records, for each inserted column, the combination of
// original columns it reduces to.  Used to extract kernel bases.
template <typename F>
class RecordingEchelon {
public:
    struct Reduced {
        SparseVec<F> value;  // residual in the target space
        SparseVec<F> combo;  // coefficients over original column indices
    };

    // Insert the j-th original column; when it is dependent the recorded
    // combination is a kernel vector (including the unit coefficient at j).
    // Returns the kernel vector, or an empty vector if the rank grew.
    SparseVec<F> insert(int64_t j, SparseVec<F> v) {
        SparseVec<F> combo{{j, F(1)}};
        SparseVec<F> tmp;
        while (!v.empty()) {
            int64_t lead = v.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                F inv = F(1) / v.front().second;
                if (!(inv == F(1))) {
                    for (auto& [i, x] : v) x = x * inv;
                    for (auto& [i, x] : combo) x = x * inv;
                }
                pivots_.emplace(lead, Reduced{std::move(v), std::move(combo)});
                return {};
            }
            F c = -v.front().second;
            sv_add_scaled(tmp, v, c, it->second.value);
            v.swap(tmp);
            sv_add_scaled(tmp, combo, c, it->second.combo);
            combo.swap(tmp);
        }
        return combo;
    }

    size_t rank() const { return pivots_.size(); }

private:
    std::unordered_map<int64_t, Reduced> pivots_;
};

// Basis of the quotient ker / im with coordinates, for inducing maps on
// homology.  Build with the image columns first, then offer cycles.
template <typename F>
class QuotientBasis {
public:
    void add_image_column(SparseVec<F> v) { image_.insert(std::move(v)); }

    // Offer a cycle; if independent modulo the image and previous
    // representatives it becomes representative #k.  Rep and image pivots can
    // alternate along the vector, so reductions interleave; the lead index
    // strictly increases.
    void offer_cycle(const SparseVec<F>& v) {
        SparseVec<F> r = image_.reduce(v);
        SparseVec<F> tmp;
        while (!r.empty()) {
            int64_t lead = r.front().first;
            auto it = reps_.find(lead);
            if (it == reps_.end()) {
                SparseVec<F> reduced = image_.reduce(std::move(r));
                if (!reduced.empty() && reduced.front().first == lead) {
                    r = std::move(reduced);
                    break;  // lead is pivot-free: genuinely new
                }
                r = std::move(reduced);
                continue;
            }
            F c = -r.front().second;
            sv_add_scaled(tmp, r, c, it->second.first);
            r.swap(tmp);
        }
        if (r.empty()) return;
        F inv = F(1) / r.front().second;
        if (!(inv == F(1)))
            for (auto& [i, x] : r) x = x * inv;
        int64_t lead = r.front().first;
        rep_vectors_.push_back(r);
        reps_.emplace(lead, std::pair<SparseVec<F>, size_t>{std::move(r), rep_vectors_.size() - 1});
    }

    size_t dimension() const { return rep_vectors_.size(); }
    const SparseVec<F>& representative(size_t k) const { return rep_vectors_[k]; }

    // Coordinates of a cycle in the representative basis; the cycle must lie
    // in im + span(reps).
    std::vector<F> coordinates(SparseVec<F> v) const {
        std::vector<F> coords(rep_vectors_.size(), F(0));
        v = image_.reduce(std::move(v));
        SparseVec<F> tmp;
        while (!v.empty()) {
            int64_t lead = v.front().first;
            auto it = reps_.find(lead);
            if (it == reps_.end()) {
                // Interleave with image reduction: rep and image pivots may
                // alternate along the vector.  Leads strictly increase, so
                // this terminates.
                SparseVec<F> reduced = image_.reduce(std::move(v));
                if (!reduced.empty() && reduced.front().first == lead)
                    throw contract_error("coordinates: vector not in im + span(reps)");
                v = std::move(reduced);
                continue;
            }
            F c = v.front().second;
            coords[it->second.second] += c;
            sv_add_scaled(tmp, v, -c, it->second.first);
            v.swap(tmp);
        }
        return coords;
    }

private:
    Echelon<F> image_;
    std::unordered_map<int64_t, std::pair<SparseVec<F>, size_t>> reps_;
    std::vector<SparseVec<F>> rep_vectors_;
};

// Rank of a dense row-major matrix; convenience for small oracles.
template <typename F>
size_t dense_rank(std::vector<std::vector<F>> m) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == F(0)) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        F inv = F(1) / m[rank][c];
        for (size_t j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == F(0)) continue;
            F f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace ncw
