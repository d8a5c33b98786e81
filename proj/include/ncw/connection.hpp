#pragma once

#include <cstdint>
#include <vector>

#include "ncw/nctorus.hpp"

namespace ncw {

// Dense matrix over A_theta.  Entries multiply with nc_mul, so the order of
// factors matters everywhere.
class NCMatrix {
public:
    NCMatrix() = default;
    NCMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static NCMatrix identity(size_t n) {
        NCMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = NCElement(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    NCElement& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const NCElement& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    friend NCMatrix operator+(const NCMatrix& a, const NCMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw input_error("matrix dimension mismatch");
        NCMatrix r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
        return r;
    }
    friend NCMatrix operator-(const NCMatrix& a, const NCMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw input_error("matrix dimension mismatch");
        NCMatrix r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }
    friend NCMatrix operator*(const NCMatrix& a, const NCMatrix& b) {
        if (a.cols_ != b.rows_) throw input_error("matrix dimension mismatch");
        NCMatrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += nc_mul(a.at(i, k), b.at(k, j));
                }
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!e.is_zero()) return false;
        return true;
    }
    friend bool operator==(const NCMatrix& a, const NCMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && (a - b).is_zero();
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<NCElement> data_;
};

inline NCMatrix delta_tau(const NCMatrix& m) {
    NCMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = delta_tau(m.at(i, j));
    return r;
}

// Holomorphic structure nabla(v) = delta_tau(v) + B v on the free module
// A_theta^k (elements as columns).  The Leibniz law against the right action
// holds for any B of this shape.
struct FreeConnection {
    NCMatrix B;

    explicit FreeConnection(NCMatrix b) : B(std::move(b)) {
        if (B.rows() != B.cols()) throw input_error("connection matrix must be square");
    }
    size_t rank() const { return B.rows(); }

    // Rank-1 case B = (c z): nabla_z(a) = delta_tau(a) + c z a.
    static FreeConnection standard_z(const SymbolicScalar& zval = SymbolicScalar::z()) {
        NCMatrix b(1, 1);
        b.at(0, 0) = NCElement(SymbolicScalar::c() * zval);
        return FreeConnection(std::move(b));
    }
};

inline NCMatrix nabla_free(const NCMatrix& v, const FreeConnection& conn) {
    if (v.cols() != 1 || v.rows() != conn.rank())
        throw input_error("column dimension mismatch");
    return delta_tau(v) + conn.B * v;
}

// Lift of a holomorphic structure along a surjection of free modules.
// Given F: A^p -> A^q with a section S (F S = I) and a connection B2 on A^q,
// returns B1 = S (delta_tau(F) + B2 F), which intertwines:
//   F B1 = delta_tau(F) + B2 F,  i.e.  F nabla_1 = nabla_2 F.
inline NCMatrix lift_connection(const NCMatrix& F, const NCMatrix& S, const NCMatrix& B2) {
    size_t q = F.rows(), p = F.cols();
    if (S.rows() != p || S.cols() != q) throw input_error("matrix dimension mismatch");
    if (B2.rows() != q || B2.cols() != q) throw input_error("matrix dimension mismatch");
    if (!(F * S == NCMatrix::identity(q))) throw input_error("not a section: F*S != I");

    NCMatrix rhs = delta_tau(F) + B2 * F;
    NCMatrix B1 = S * rhs;
    // The intertwining identity is guaranteed by F S = I; re-verify anyway.
    if (!(F * B1 == rhs))
        throw contract_error("lift_connection: intertwining identity failed");
    return B1;
}

}  // namespace ncw
