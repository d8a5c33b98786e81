#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncw/error.hpp"
#include "ncw/linalg.hpp"
#include "ncw/rational.hpp"

namespace ncw {

using GRVec = SparseVec<GaussianRational>;

// Finite-dimensional algebra over Q(i) given by structure constants.
// Associativity and the unit laws are verified on load.
class AlgebraPresentation {
public:
    AlgebraPresentation(std::vector<std::string> names,
                        std::vector<GRVec> mult,
                        std::optional<std::vector<GaussianRational>> unit)
        : names_(std::move(names)), mult_(std::move(mult)), unit_(std::move(unit)) {
        dim_ = names_.size();
        if (mult_.size() != dim_ * dim_)
            throw input_error("algebra: multiplication table has wrong size");
        validate();
    }

    size_t dim() const { return dim_; }
    const std::vector<std::string>& names() const { return names_; }
    bool is_unital() const { return unit_.has_value(); }
    const std::vector<GaussianRational>& unit() const {
        if (!unit_) throw input_error("algebra is not unital");
        return *unit_;
    }

    // b_i * b_j as a sparse vector over the basis.
    const GRVec& basis_product(size_t i, size_t j) const { return mult_[i * dim_ + j]; }

    std::vector<GaussianRational> product(const std::vector<GaussianRational>& a,
                                          const std::vector<GaussianRational>& b) const {
        std::vector<GaussianRational> r(dim_, GaussianRational(0));
        for (size_t i = 0; i < dim_; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < dim_; ++j) {
                if (b[j].is_zero()) continue;
                GaussianRational c = a[i] * b[j];
                for (const auto& [k, v] : basis_product(i, j)) r[static_cast<size_t>(k)] += c * v;
            }
        }
        return r;
    }

    bool all_real() const {
        for (const auto& sv : mult_)
            for (const auto& [k, v] : sv)
                if (!v.is_real()) return false;
        if (unit_)
            for (const auto& v : *unit_)
                if (!v.is_real()) return false;
        return true;
    }

private:
    void validate() const {
        for (const auto& sv : mult_)
            for (const auto& [k, v] : sv) {
                if (k < 0 || static_cast<size_t>(k) >= dim_)
                    throw input_error("algebra: product index out of range");
                if (v.is_zero()) throw input_error("algebra: stored zero coefficient");
            }
        // associativity on all basis triples
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j)
                for (size_t k = 0; k < dim_; ++k) {
                    std::unordered_map<int64_t, GaussianRational> lhs, rhs;
                    for (const auto& [p, c] : basis_product(i, j))
                        sv_accumulate(lhs, c, basis_product(static_cast<size_t>(p), k));
                    for (const auto& [p, c] : basis_product(j, k))
                        sv_accumulate(rhs, c, basis_product(i, static_cast<size_t>(p)));
                    GRVec l = sv_from_accumulator(lhs), r = sv_from_accumulator(rhs);
                    if (l != r)
                        throw input_error("algebra: associativity fails on basis triple (" +
                                          names_[i] + ", " + names_[j] + ", " + names_[k] + ")");
                }
        if (unit_) {
            if (unit_->size() != dim_) throw input_error("algebra: unit vector has wrong size");
            for (size_t i = 0; i < dim_; ++i) {
                std::vector<GaussianRational> e(dim_, GaussianRational(0));
                e[i] = GaussianRational(1);
                std::vector<GaussianRational> u(*unit_);
                if (product(u, e) != e || product(e, u) != e)
                    throw input_error("algebra: unit laws fail on basis element " + names_[i]);
            }
        }
    }

    std::vector<std::string> names_;
    std::vector<GRVec> mult_;
    std::optional<std::vector<GaussianRational>> unit_;
    size_t dim_ = 0;
};

namespace presets {

inline AlgebraPresentation field_q() {
    return AlgebraPresentation({"1"}, {GRVec{{0, GaussianRational(1)}}},
                               std::vector<GaussianRational>{GaussianRational(1)});
}

// Q[x]/(x^2), basis {1, x}.
inline AlgebraPresentation dual_numbers() {
    std::vector<GRVec> mult(4);
    mult[0 * 2 + 0] = {{0, GaussianRational(1)}};
    mult[0 * 2 + 1] = {{1, GaussianRational(1)}};
    mult[1 * 2 + 0] = {{1, GaussianRational(1)}};
    mult[1 * 2 + 1] = {};
    return AlgebraPresentation({"1", "x"}, std::move(mult),
                               std::vector<GaussianRational>{GaussianRational(1), GaussianRational(0)});
}

// Q x Q, basis of orthogonal idempotents.
inline AlgebraPresentation q_times_q() {
    std::vector<GRVec> mult(4);
    mult[0 * 2 + 0] = {{0, GaussianRational(1)}};
    mult[1 * 2 + 1] = {{1, GaussianRational(1)}};
    return AlgebraPresentation({"e1", "e2"}, std::move(mult),
                               std::vector<GaussianRational>{GaussianRational(1), GaussianRational(1)});
}

// M_k(Q), basis of matrix units E_{ij}, index i*k+j.
inline AlgebraPresentation matrix_q(size_t k) {
    size_t n = k * k;
    std::vector<std::string> names(n);
    std::vector<GRVec> mult(n * n);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) names[i * k + j] = "E" + std::to_string(i + 1) + std::to_string(j + 1);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            for (size_t p = 0; p < k; ++p)
                for (size_t q = 0; q < k; ++q)
                    if (j == p)
                        mult[(i * k + j) * n + (p * k + q)] = {
                            {static_cast<int64_t>(i * k + q), GaussianRational(1)}};
    std::vector<GaussianRational> unit(n, GaussianRational(0));
    for (size_t i = 0; i < k; ++i) unit[i * k + i] = GaussianRational(1);
    return AlgebraPresentation(std::move(names), std::move(mult), std::move(unit));
}

// Path algebra of the A2 quiver 1 -> 2: basis {e1, e2, a}, a = e2 a e1.
inline AlgebraPresentation path_a2() {
    std::vector<GRVec> mult(9);
    auto one = [](int64_t k) { return GRVec{{k, GaussianRational(1)}}; };
    mult[0 * 3 + 0] = one(0);  // e1 e1
    mult[1 * 3 + 1] = one(1);  // e2 e2
    mult[1 * 3 + 2] = one(2);  // e2 a
    mult[2 * 3 + 0] = one(2);  // a e1
    return AlgebraPresentation({"e1", "e2", "a"}, std::move(mult),
                               std::vector<GaussianRational>{GaussianRational(1), GaussianRational(1),
                                                             GaussianRational(0)});
}

inline AlgebraPresentation zero_algebra() {
    return AlgebraPresentation({}, {}, std::vector<GaussianRational>{});
}

}  // namespace presets

// M_n(A): basis (i, j, b) -> (i*n + j)*dim(A) + b.
inline AlgebraPresentation matrix_algebra(const AlgebraPresentation& a, size_t n) {
    size_t da = a.dim();
    size_t d = n * n * da;
    std::vector<std::string> names(d);
    std::vector<GRVec> mult(d * d);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < da; ++b)
                names[(i * n + j) * da + b] =
                    "E" + std::to_string(i + 1) + std::to_string(j + 1) + "." + a.names()[b];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < da; ++b)
                for (size_t p = 0; p < n; ++p)
                    for (size_t q = 0; q < n; ++q)
                        for (size_t c = 0; c < da; ++c) {
                            if (j != p) continue;
                            size_t lhs = (i * n + j) * da + b;
                            size_t rhs = (p * n + q) * da + c;
                            GRVec out;
                            for (const auto& [k, v] : a.basis_product(b, c))
                                out.emplace_back(
                                    static_cast<int64_t>((i * n + q) * da + static_cast<size_t>(k)), v);
                            mult[lhs * d + rhs] = std::move(out);
                        }
    std::optional<std::vector<GaussianRational>> unit;
    if (a.is_unital()) {
        std::vector<GaussianRational> u(d, GaussianRational(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t b = 0; b < da; ++b) u[(i * n + i) * da + b] = a.unit()[b];
        unit = std::move(u);
    }
    return AlgebraPresentation(std::move(names), std::move(mult), std::move(unit));
}

// dim of the commutator subspace [A, A]; HH_0 = dim A - this.
inline size_t commutator_rank(const AlgebraPresentation& a) {
    Echelon<GaussianRational> ech;
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            std::unordered_map<int64_t, GaussianRational> acc;
            sv_accumulate(acc, GaussianRational(1), a.basis_product(i, j));
            sv_accumulate(acc, -GaussianRational(1), a.basis_product(j, i));
            GRVec v = sv_from_accumulator(acc);
            if (!v.empty()) ech.insert(std::move(v));
        }
    return ech.rank();
}

// Finite dg category: objects, graded hom bases, differentials, composition
// tensors and identities.  All axioms are verified on load.
class DgCategoryPresentation {
public:
    struct Hom {
        std::vector<std::string> names;
        std::vector<int32_t> degrees;
        size_t dim() const { return names.size(); }
    };

    DgCategoryPresentation(size_t objects,
                           std::vector<Hom> hom,                 // [x*objects + y]
                           std::vector<std::vector<GRVec>> diff, // per hom, per basis elt
                           std::vector<std::vector<GRVec>> comp, // [x,y,z] flattened: g*dimF + f
                           std::vector<GRVec> identities)        // per object, in hom[x][x]
        : n_obj_(objects), hom_(std::move(hom)), diff_(std::move(diff)), comp_(std::move(comp)),
          ids_(std::move(identities)) {
        if (hom_.size() != n_obj_ * n_obj_) throw input_error("dg category: hom table size");
        if (diff_.size() != hom_.size()) throw input_error("dg category: differential table size");
        if (comp_.size() != n_obj_ * n_obj_ * n_obj_)
            throw input_error("dg category: composition table size");
        validate();
    }

    size_t objects() const { return n_obj_; }
    const Hom& hom(size_t x, size_t y) const { return hom_[x * n_obj_ + y]; }
    bool has_identities() const { return !ids_.empty(); }
    const GRVec& identity(size_t x) const {
        if (ids_.empty()) throw input_error("dg category has no identities");
        return ids_[x];
    }
    const GRVec& differential(size_t x, size_t y, size_t f) const {
        return diff_[x * n_obj_ + y][f];
    }
    // g in hom(y,z) composed after f in hom(x,y); result over hom(x,z).
    const GRVec& compose(size_t x, size_t y, size_t z, size_t g, size_t f) const {
        return comp_[(x * n_obj_ + y) * n_obj_ + z][g * hom_[x * n_obj_ + y].dim() + f];
    }

    bool ungraded() const {
        for (const auto& h : hom_)
            for (int32_t d : h.degrees)
                if (d != 0) return false;
        return true;
    }

    bool all_real() const {
        auto real = [](const std::vector<std::vector<GRVec>>& tables) {
            for (const auto& t : tables)
                for (const auto& sv : t)
                    for (const auto& [k, v] : sv)
                        if (!v.is_real()) return false;
            return true;
        };
        if (!real(diff_) || !real(comp_)) return false;
        for (const auto& sv : ids_)
            for (const auto& [k, v] : sv)
                if (!v.is_real()) return false;
        return true;
    }

    // One-object dg category of a (possibly graded-trivial) algebra; word
    // enumeration then matches the algebra pipeline exactly.
    static DgCategoryPresentation of_algebra(const AlgebraPresentation& a) {
        size_t d = a.dim();
        Hom h;
        h.names = a.names();
        h.degrees.assign(d, 0);
        std::vector<std::vector<GRVec>> diff(1);
        diff[0].assign(d, GRVec{});
        std::vector<std::vector<GRVec>> comp(1);
        comp[0].resize(d * d);
        for (size_t g = 0; g < d; ++g)
            for (size_t f = 0; f < d; ++f) comp[0][g * d + f] = a.basis_product(g, f);
        std::vector<GRVec> ids;
        if (a.is_unital()) {
            GRVec u;
            for (size_t i = 0; i < d; ++i)
                if (!a.unit()[i].is_zero()) u.emplace_back(static_cast<int64_t>(i), a.unit()[i]);
            ids.push_back(std::move(u));
        }
        return DgCategoryPresentation(1, {std::move(h)}, std::move(diff), std::move(comp),
                                      std::move(ids));
    }

private:
    void validate() const {
        // index ranges and degree bookkeeping
        for (size_t x = 0; x < n_obj_; ++x)
            for (size_t y = 0; y < n_obj_; ++y) {
                const Hom& h = hom(x, y);
                if (h.degrees.size() != h.dim()) throw input_error("dg category: degree list size");
                const auto& dm = diff_[x * n_obj_ + y];
                if (dm.size() != h.dim()) throw input_error("dg category: differential size");
                for (size_t f = 0; f < h.dim(); ++f)
                    for (const auto& [k, v] : dm[f]) {
                        if (k < 0 || static_cast<size_t>(k) >= h.dim())
                            throw input_error("dg category: differential index range");
                        if (h.degrees[static_cast<size_t>(k)] != h.degrees[f] + 1)
                            throw input_error("dg category: differential must raise degree by 1");
                    }
            }
        // d^2 = 0
        for (size_t x = 0; x < n_obj_; ++x)
            for (size_t y = 0; y < n_obj_; ++y) {
                const Hom& h = hom(x, y);
                for (size_t f = 0; f < h.dim(); ++f) {
                    std::unordered_map<int64_t, GaussianRational> acc;
                    for (const auto& [k, v] : differential(x, y, f))
                        sv_accumulate(acc, v, differential(x, y, static_cast<size_t>(k)));
                    if (!acc.empty()) throw input_error("dg category: d^2 != 0");
                }
            }
        // composition: degree additivity, Leibniz, associativity
        for (size_t x = 0; x < n_obj_; ++x)
            for (size_t y = 0; y < n_obj_; ++y)
                for (size_t z = 0; z < n_obj_; ++z) {
                    const Hom& hf = hom(x, y);
                    const Hom& hg = hom(y, z);
                    const Hom& ho = hom(x, z);
                    const auto& table = comp_[(x * n_obj_ + y) * n_obj_ + z];
                    if (table.size() != hf.dim() * hg.dim())
                        throw input_error("dg category: composition table size");
                    for (size_t g = 0; g < hg.dim(); ++g)
                        for (size_t f = 0; f < hf.dim(); ++f) {
                            for (const auto& [k, v] : table[g * hf.dim() + f]) {
                                if (k < 0 || static_cast<size_t>(k) >= ho.dim())
                                    throw input_error("dg category: composition index range");
                                if (ho.degrees[static_cast<size_t>(k)] !=
                                    hf.degrees[f] + hg.degrees[g])
                                    throw input_error("dg category: composition must add degrees");
                            }
                            // d(g f) = d(g) f + (-1)^{deg g} g d(f)
                            std::unordered_map<int64_t, GaussianRational> lhs, rhs;
                            for (const auto& [k, v] : table[g * hf.dim() + f])
                                sv_accumulate(lhs, v, differential(x, z, static_cast<size_t>(k)));
                            for (const auto& [k, v] : differential(y, z, g))
                                sv_accumulate(rhs, v, table[static_cast<size_t>(k) * hf.dim() + f]);
                            GaussianRational sgn((hg.degrees[g] % 2 == 0) ? 1 : -1);
                            for (const auto& [k, v] : differential(x, y, f))
                                sv_accumulate(rhs, sgn * v,
                                              table[g * hf.dim() + static_cast<size_t>(k)]);
                            if (sv_from_accumulator(lhs) != sv_from_accumulator(rhs))
                                throw input_error("dg category: Leibniz rule fails");
                        }
                }
        for (size_t x = 0; x < n_obj_; ++x)
            for (size_t y = 0; y < n_obj_; ++y)
                for (size_t z = 0; z < n_obj_; ++z)
                    for (size_t w = 0; w < n_obj_; ++w) {
                        // (h g) f = h (g f) for f: x->y, g: y->z, h: z->w
                        const Hom& hf = hom(x, y);
                        const Hom& hg = hom(y, z);
                        const Hom& hh = hom(z, w);
                        for (size_t f = 0; f < hf.dim(); ++f)
                            for (size_t g = 0; g < hg.dim(); ++g)
                                for (size_t hh_i = 0; hh_i < hh.dim(); ++hh_i) {
                                    std::unordered_map<int64_t, GaussianRational> lhs, rhs;
                                    for (const auto& [k, v] : compose(y, z, w, hh_i, g))
                                        sv_accumulate(lhs, v,
                                                      compose(x, y, w, static_cast<size_t>(k), f));
                                    for (const auto& [k, v] : compose(x, y, z, g, f))
                                        sv_accumulate(rhs, v,
                                                      compose(x, z, w, hh_i, static_cast<size_t>(k)));
                                    if (sv_from_accumulator(lhs) != sv_from_accumulator(rhs))
                                        throw input_error("dg category: composition associativity fails");
                                }
                    }
        if (!ids_.empty()) {
            if (ids_.size() != n_obj_) throw input_error("dg category: identity list size");
            for (size_t x = 0; x < n_obj_; ++x) {
                for (const auto& [k, v] : ids_[x]) {
                    const Hom& h = hom(x, x);
                    if (k < 0 || static_cast<size_t>(k) >= h.dim())
                        throw input_error("dg category: identity index range");
                    if (h.degrees[static_cast<size_t>(k)] != 0)
                        throw input_error("dg category: identity must have degree 0");
                }
                for (size_t y = 0; y < n_obj_; ++y) {
                    const Hom& h = hom(x, y);
                    for (size_t f = 0; f < h.dim(); ++f) {
                        // f . id_x = f
                        std::unordered_map<int64_t, GaussianRational> acc;
                        for (const auto& [k, v] : ids_[x])
                            sv_accumulate(acc, v, compose(x, x, y, f, static_cast<size_t>(k)));
                        GRVec got = sv_from_accumulator(acc);
                        if (got != GRVec{{static_cast<int64_t>(f), GaussianRational(1)}})
                            throw input_error("dg category: right identity law fails");
                    }
                    const Hom& h2 = hom(y, x);
                    for (size_t f = 0; f < h2.dim(); ++f) {
                        // id_x . f = f
                        std::unordered_map<int64_t, GaussianRational> acc;
                        for (const auto& [k, v] : ids_[x])
                            sv_accumulate(acc, v, compose(y, x, x, static_cast<size_t>(k), f));
                        GRVec got = sv_from_accumulator(acc);
                        if (got != GRVec{{static_cast<int64_t>(f), GaussianRational(1)}})
                            throw input_error("dg category: left identity law fails");
                    }
                }
            }
        }
    }

    size_t n_obj_;
    std::vector<Hom> hom_;
    std::vector<std::vector<GRVec>> diff_;
    std::vector<std::vector<GRVec>> comp_;
    std::vector<GRVec> ids_;
};

}  // namespace ncw
