#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ncw/algebra.hpp"
#include "ncw/error.hpp"
#include "ncw/linalg.hpp"

namespace ncw {

// ---------------------------------------------------------------------------
// Cyclic modules.
//
// A degree-n basis word is a cyclically composable tuple (f_n, ..., f_0) with
// f_j in Hom(B_j, B_{j+1}) for j < n and f_n in Hom(B_n, B_0).  Face maps
// compose adjacent letters,
//   face_i (f_n,...,f_0) = (f_n,..., f_i f_{i-1}, ..., f_0)        i = 1..n
//   face_0 (f_n,...,f_0) = +- (f_0 f_n, f_{n-1}, ..., f_1)
// and the cyclic operator moves the last letter to the front,
//   t (f_n,...,f_0) = +- (f_0, f_n, ..., f_1).
// The face_0 sign is the Koszul sign of carrying f_0 past all other letters,
// (-1)^{deg f_0 * (deg f_1 + ... + deg f_n)}; t carries the same Koszul sign
// times the simplicial (-1)^n.  The boundary is b = sum (-1)^i face_i, the
// extra degeneracy s inserts the identity as a new top letter, N = sum t^i,
// and the Connes operator is B = (-1)^{n+1} (1 - t) s N; the grading twist on
// B matches the face numbering so that b^2 = B^2 = bB + Bb = 0 hold exactly.
// The identity suite in the tests is the arbiter for all of these signs.
// ---------------------------------------------------------------------------

struct HomologyResult {
    std::map<int, int64_t> dims;
};

// Converts a column to the int64 fast field; fast_field_overflow reroutes the
// whole rank computation to exact big rationals.
inline void to_fast_column(const GRVec& in, SparseVec<CheckedRational>& out) {
    out.clear();
    out.reserve(in.size());
    for (const auto& [i, c] : in) {
        if (!c.is_real()) throw fast_field_overflow();
        const Integer& num = boost::multiprecision::numerator(c.re());
        const Integer& den = boost::multiprecision::denominator(c.re());
        if (num > (INT64_MAX >> 1) || num < -(INT64_MAX >> 1) || den > (INT64_MAX >> 1))
            throw fast_field_overflow();
        out.emplace_back(i, CheckedRational(num.convert_to<long long>(),
                                            den.convert_to<long long>()));
    }
}

// Exact rank of a streamed column family.  When allowed, columns are first
// eliminated over the checked int64 field; any overflow falls back to the
// exact field and recomputes from scratch.
template <typename Emit>
size_t exact_rank(int64_t count, Emit&& emit, bool try_fast) {
    if (try_fast) {
        try {
            Echelon<CheckedRational> ech;
            GRVec col;
            SparseVec<CheckedRational> fcol;
            for (int64_t j = 0; j < count; ++j) {
                emit(j, col);
                if (col.empty()) continue;
                to_fast_column(col, fcol);
                ech.insert(std::move(fcol));
            }
            return ech.rank();
        } catch (const fast_field_overflow&) {
        }
    }
    Echelon<GaussianRational> ech;
    GRVec col;
    for (int64_t j = 0; j < count; ++j) {
        emit(j, col);
        if (!col.empty()) ech.insert(std::move(col));
    }
    return ech.rank();
}

// Specialized cyclic module of an algebra: degree-n words are (n+1)-letter
// base-N integers, letter j at digit j.
class AlgebraCyclic {
public:
    AlgebraCyclic(AlgebraPresentation algebra, int n_max, int64_t budget = 200000)
        : a_(std::move(algebra)), n_max_(n_max) {
        if (n_max < 0) throw input_error("n_max must be nonnegative");
        int64_t n = static_cast<int64_t>(a_.dim());
        pw_.assign(static_cast<size_t>(n_max) + 2, 1);
        for (size_t k = 1; k < pw_.size(); ++k) {
            pw_[k] = pw_[k - 1] * n;
            if (static_cast<int>(k) <= n_max + 1 && pw_[k] > budget)
                throw input_error("budget exceeded: degree-" + std::to_string(k - 1) +
                                  " term has dimension " + std::to_string(pw_[k]));
        }
    }

    const AlgebraPresentation& algebra() const { return a_; }
    int max_degree() const { return n_max_; }
    bool ungraded() const { return true; }
    bool all_real() const { return a_.all_real(); }

    int64_t dim(int n) const {
        if (a_.dim() == 0) return 0;
        return pw_[static_cast<size_t>(n) + 1];
    }

    int letter(int64_t w, int j) const {
        return static_cast<int>((w / pw_[j]) % static_cast<int64_t>(a_.dim()));
    }

    // face_i column; i in [0, n], valid for n >= 1.
    void face_column(int n, int i, int64_t w, GRVec& out) const {
        out.clear();
        int64_t N = static_cast<int64_t>(a_.dim());
        if (i >= 1) {
            int64_t prefix = w % pw_[i - 1];
            int lo = letter(w, i - 1);
            int hi = letter(w, i);
            int64_t suffix = w / pw_[i + 1];
            const GRVec& prod = a_.basis_product(static_cast<size_t>(hi), static_cast<size_t>(lo));
            for (const auto& [k, c] : prod)
                out.emplace_back(prefix + k * pw_[i - 1] + suffix * pw_[i], c);
        } else {
            // compose f_0 after f_n, result becomes the new top letter
            int f0 = letter(w, 0);
            int fn = letter(w, n);
            int64_t mid = (w / N) % pw_[n - 1];
            const GRVec& prod = a_.basis_product(static_cast<size_t>(f0), static_cast<size_t>(fn));
            for (const auto& [k, c] : prod) out.emplace_back(mid + k * pw_[n - 1], c);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }

    void b_column(int n, int64_t w, GRVec& out) const {
        out.clear();
        if (n == 0) return;
        std::unordered_map<int64_t, GaussianRational> acc;
        GRVec face;
        for (int i = 0; i <= n; ++i) {
            face_column(n, i, w, face);
            GaussianRational sgn((i % 2 == 0) ? 1 : -1);
            sv_accumulate(acc, sgn, face);
        }
        out = sv_from_accumulator(acc);
    }

    // Cyclic operator: sign (-1)^n, last letter moved to the top digit.
    std::pair<int64_t, GaussianRational> t_image(int n, int64_t w) const {
        int64_t N = static_cast<int64_t>(a_.dim());
        int64_t img = w / N + (w % N) * pw_[n];
        return {img, GaussianRational(n % 2 == 0 ? 1 : -1)};
    }

    // Extra degeneracy: insert the unit as a new top letter.
    void s_column(int n, int64_t w, GRVec& out) const {
        out.clear();
        const auto& u = a_.unit();  // throws when non-unital
        for (size_t k = 0; k < u.size(); ++k)
            if (!u[k].is_zero())
                out.emplace_back(w + static_cast<int64_t>(k) * pw_[n + 1], u[k]);
    }

    void connes_B_column(int n, int64_t w, GRVec& out) const {
        out.clear();
        std::unordered_map<int64_t, GaussianRational> acc;
        GaussianRational outer(((n + 1) % 2 == 0) ? 1 : -1);
        int64_t cur = w;
        GaussianRational sign(1);
        GRVec ins;
        for (int r = 0; r <= n; ++r) {
            // (1 - t) s applied to sign * cur
            s_column(n, cur, ins);
            for (const auto& [v, c] : ins) {
                GaussianRational coeff = outer * sign * c;
                auto it = acc.find(v);
                if (it == acc.end()) acc.emplace(v, coeff);
                else {
                    it->second += coeff;
                    if (it->second.is_zero()) acc.erase(it);
                }
                auto [tv, tc] = t_image(n + 1, v);
                GaussianRational tcoeff = -coeff * tc;
                it = acc.find(tv);
                if (it == acc.end()) acc.emplace(tv, tcoeff);
                else {
                    it->second += tcoeff;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
            auto [nw, nc] = t_image(n, cur);
            cur = nw;
            sign *= nc;
        }
        out = sv_from_accumulator(acc);
    }

    int64_t word_internal_degree(int, int64_t) const { return 0; }

private:
    AlgebraPresentation a_;
    int n_max_;
    std::vector<int64_t> pw_;
};

// General cyclic module of a finite dg category.
class CategoryCyclic {
public:
    CategoryCyclic(DgCategoryPresentation cat, int n_max, int64_t budget = 200000)
        : c_(std::move(cat)), n_max_(n_max) {
        if (n_max < 0) throw input_error("n_max must be nonnegative");
        levels_.resize(static_cast<size_t>(n_max) + 2);
        for (int n = 0; n <= n_max + 1; ++n) {
            build_level(n);
            // level n_max+1 is only an index space for operator targets
            if (n <= n_max && levels_[n].total > budget)
                throw input_error("budget exceeded: degree-" + std::to_string(n) +
                                  " term has dimension " + std::to_string(levels_[n].total));
        }
    }

    const DgCategoryPresentation& category() const { return c_; }
    int max_degree() const { return n_max_; }
    bool ungraded() const { return c_.ungraded(); }
    bool all_real() const { return c_.all_real(); }

    int64_t dim(int n) const { return levels_[n].total; }

    struct Word {
        int cycle;                    // index into the level's cycle list
        std::vector<int32_t> letters; // letter per slot
    };

    Word decode(int n, int64_t idx) const {
        const Level& lv = levels_[n];
        size_t lo = 0, hi = lv.cycles.size();
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (lv.cycles[mid].offset <= idx) lo = mid;
            else hi = mid;
        }
        const Cycle& cy = lv.cycles[lo];
        Word w;
        w.cycle = static_cast<int>(lo);
        int64_t rem = idx - cy.offset;
        w.letters.resize(cy.objs.size());
        for (size_t j = 0; j < cy.objs.size(); ++j) {
            w.letters[j] = static_cast<int32_t>(rem % cy.dims[j]);
            rem /= cy.dims[j];
        }
        return w;
    }

    int64_t encode(int n, const std::vector<int>& objs, const std::vector<int32_t>& letters) const {
        const Level& lv = levels_[n];
        auto it = lv.lookup.find(objs);
        if (it == lv.lookup.end()) throw contract_error("cyclic module: unknown object cycle");
        const Cycle& cy = lv.cycles[static_cast<size_t>(it->second)];
        int64_t idx = 0;
        for (size_t j = objs.size(); j-- > 0;) idx = idx * cy.dims[j] + letters[j];
        return cy.offset + idx;
    }

    int letter_degree(int x, int y, int32_t f) const {
        return c_.hom(static_cast<size_t>(x), static_cast<size_t>(y)).degrees[static_cast<size_t>(f)];
    }

    int64_t word_internal_degree(int n, int64_t idx) const {
        Word w = decode(n, idx);
        const Cycle& cy = levels_[n].cycles[w.cycle];
        int64_t s = 0;
        for (size_t j = 0; j <= static_cast<size_t>(n); ++j)
            s += letter_degree(cy.objs[j], cy.objs[(j + 1) % (n + 1)], w.letters[j]);
        return s;
    }

    void face_column(int n, int i, int64_t idx, GRVec& out) const {
        out.clear();
        Word w = decode(n, idx);
        const Cycle& cy = levels_[n].cycles[w.cycle];
        auto obj = [&](int j) { return cy.objs[static_cast<size_t>(j)]; };
        std::unordered_map<int64_t, GaussianRational> acc;
        if (i >= 1) {
            // compose f_i after f_{i-1}; object B_i drops out
            int x = obj(i - 1), y = obj(i), z = obj((i + 1) % (n + 1));
            const GRVec& prod = c_.compose(static_cast<size_t>(x), static_cast<size_t>(y),
                                           static_cast<size_t>(z),
                                           static_cast<size_t>(w.letters[i]),
                                           static_cast<size_t>(w.letters[i - 1]));
            if (prod.empty()) return;
            std::vector<int> objs;
            std::vector<int32_t> letters;
            objs.reserve(n);
            letters.reserve(n);
            for (int j = 0; j <= n; ++j)
                if (j != i) objs.push_back(obj(j));
            for (int j = 0; j < i - 1; ++j) letters.push_back(w.letters[j]);
            letters.push_back(0);  // slot i-1: composite placeholder
            for (int j = i + 1; j <= n; ++j) letters.push_back(w.letters[j]);
            for (const auto& [k, c] : prod) {
                letters[static_cast<size_t>(i - 1)] = static_cast<int32_t>(k);
                sv_accumulate(acc, c, GRVec{{encode(n - 1, objs, letters), GaussianRational(1)}});
            }
        } else {
            // compose f_0 after f_n with the Koszul sign of moving f_0 home
            int x = obj(n), y = obj(0), z = obj(1);
            const GRVec& prod =
                c_.compose(static_cast<size_t>(x), static_cast<size_t>(y), static_cast<size_t>(z),
                           static_cast<size_t>(w.letters[0]), static_cast<size_t>(w.letters[n]));
            if (prod.empty()) return;
            int64_t koszul = 0;
            for (int j = 1; j <= n; ++j)
                koszul += letter_degree(obj(j), obj((j + 1) % (n + 1)), w.letters[j]);
            koszul *= letter_degree(obj(0), obj(1), w.letters[0]);
            GaussianRational sgn((koszul % 2 == 0) ? 1 : -1);
            // new cycle objects (B_1, ..., B_n), composite becomes the top slot
            std::vector<int> objs;
            std::vector<int32_t> letters;
            objs.reserve(n);
            letters.reserve(n);
            for (int j = 1; j <= n; ++j) objs.push_back(obj(j));
            for (int j = 1; j < n; ++j) letters.push_back(w.letters[j]);
            letters.push_back(0);  // top slot composite placeholder
            for (const auto& [k, c] : prod) {
                letters.back() = static_cast<int32_t>(k);
                sv_accumulate(acc, sgn * c,
                              GRVec{{encode(n - 1, objs, letters), GaussianRational(1)}});
            }
        }
        out = sv_from_accumulator(acc);
    }

    void b_column(int n, int64_t w, GRVec& out) const {
        out.clear();
        if (n == 0) return;
        std::unordered_map<int64_t, GaussianRational> acc;
        GRVec face;
        for (int i = 0; i <= n; ++i) {
            face_column(n, i, w, face);
            GaussianRational sgn((i % 2 == 0) ? 1 : -1);
            sv_accumulate(acc, sgn, face);
        }
        out = sv_from_accumulator(acc);
    }

    std::pair<int64_t, GaussianRational> t_image(int n, int64_t idx) const {
        Word w = decode(n, idx);
        const Cycle& cy = levels_[n].cycles[w.cycle];
        auto obj = [&](int j) { return cy.objs[static_cast<size_t>(j)]; };
        int64_t koszul = 0;
        for (int j = 1; j <= n; ++j)
            koszul += letter_degree(obj(j), obj((j + 1) % (n + 1)), w.letters[j]);
        koszul *= letter_degree(obj(0), obj(1 % (n + 1)), w.letters[0]);
        int64_t exp = n + koszul;
        // rotated cycle B'_j = B_{j+1}; letters g_j = f_{j+1}, g_n = f_0
        std::vector<int> objs;
        std::vector<int32_t> letters;
        objs.reserve(n + 1);
        letters.reserve(n + 1);
        for (int j = 0; j <= n; ++j) objs.push_back(obj((j + 1) % (n + 1)));
        for (int j = 0; j < n; ++j) letters.push_back(w.letters[j + 1]);
        letters.push_back(w.letters[0]);
        return {encode(n, objs, letters), GaussianRational((exp % 2 == 0) ? 1 : -1)};
    }

    void s_column(int n, int64_t idx, GRVec& out) const {
        out.clear();
        Word w = decode(n, idx);
        const Cycle& cy = levels_[n].cycles[w.cycle];
        const GRVec& id = c_.identity(static_cast<size_t>(cy.objs[0]));
        std::vector<int> objs = cy.objs;
        objs.push_back(cy.objs[0]);
        std::vector<int32_t> letters = w.letters;
        letters.push_back(0);
        for (const auto& [k, v] : id) {
            letters.back() = static_cast<int32_t>(k);
            out.emplace_back(encode(n + 1, objs, letters), v);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }

    void connes_B_column(int n, int64_t w, GRVec& out) const {
        out.clear();
        std::unordered_map<int64_t, GaussianRational> acc;
        GaussianRational outer(((n + 1) % 2 == 0) ? 1 : -1);
        int64_t cur = w;
        GaussianRational sign(1);
        GRVec ins;
        for (int r = 0; r <= n; ++r) {
            s_column(n, cur, ins);
            for (const auto& [v, c] : ins) {
                GaussianRational coeff = outer * sign * c;
                sv_accumulate(acc, coeff, GRVec{{v, GaussianRational(1)}});
                auto [tv, tc] = t_image(n + 1, v);
                sv_accumulate(acc, -coeff * tc, GRVec{{tv, GaussianRational(1)}});
            }
            auto [nw, nc] = t_image(n, cur);
            cur = nw;
            sign *= nc;
        }
        out = sv_from_accumulator(acc);
    }

private:
    struct Cycle {
        std::vector<int> objs;
        std::vector<int64_t> dims;
        int64_t offset = 0;
        int64_t count = 0;
    };
    struct Level {
        std::vector<Cycle> cycles;
        std::map<std::vector<int>, int> lookup;
        int64_t total = 0;
    };

    void build_level(int n) {
        Level& lv = levels_[n];
        std::vector<int> objs(static_cast<size_t>(n) + 1, 0);
        size_t no = c_.objects();
        if (no == 0) return;
        for (;;) {
            Cycle cy;
            cy.objs = objs;
            cy.count = 1;
            bool nonzero = true;
            for (int j = 0; j <= n; ++j) {
                size_t dimj =
                    c_.hom(static_cast<size_t>(objs[j]), static_cast<size_t>(objs[(j + 1) % (n + 1)]))
                        .dim();
                cy.dims.push_back(static_cast<int64_t>(dimj));
                if (dimj == 0) nonzero = false;
                cy.count *= static_cast<int64_t>(dimj);
            }
            if (nonzero) {
                cy.offset = lv.total;
                lv.total += cy.count;
                lv.lookup.emplace(cy.objs, static_cast<int>(lv.cycles.size()));
                lv.cycles.push_back(std::move(cy));
            }
            // next object tuple
            int j = 0;
            for (; j <= n; ++j) {
                if (++objs[j] < static_cast<int>(no)) break;
                objs[j] = 0;
            }
            if (j > n) break;
        }
    }

    DgCategoryPresentation c_;
    int n_max_;
    std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// Homology drivers.
// ---------------------------------------------------------------------------

// dims and ranks of b; HH_n = dim C_n - rank b_n - rank b_{n+1}, reported for
// n <= max_degree - 1.
template <typename Module>
HomologyResult hochschild_dims(const Module& mod) {
    int top = mod.max_degree();
    bool fast = mod.all_real();
    std::vector<size_t> rank(static_cast<size_t>(top) + 2, 0);
    for (int n = 1; n <= top; ++n)
        rank[n] = exact_rank(
            mod.dim(n), [&](int64_t w, GRVec& col) { mod.b_column(n, w, col); }, fast);
    HomologyResult r;
    for (int n = 0; n + 1 <= top; ++n)
        r.dims[n] = mod.dim(n) - static_cast<int64_t>(rank[n]) - static_cast<int64_t>(rank[n + 1]);
    return r;
}

// Total complex of the (b, B) bicomplex: T_m = sum_p C_{m-2p}, block offsets
// shift uniformly so the periodicity map drops the first block.
template <typename Module>
struct TotalComplex {
    const Module& mod;

    int64_t block_dim(int m, int p) const { return mod.dim(m - 2 * p); }
    int blocks(int m) const { return m / 2 + 1; }
    int64_t dim(int m) const {
        int64_t d = 0;
        for (int p = 0; p <= m / 2; ++p) d += block_dim(m, p);
        return d;
    }
    int64_t offset(int m, int p) const {
        int64_t o = 0;
        for (int q = 0; q < p; ++q) o += block_dim(m, q);
        return o;
    }
    // Column of D: T_m -> T_{m-1} for the word w in block p.
    void column(int m, int p, int64_t w, GRVec& out) const {
        out.clear();
        int n = m - 2 * p;
        GRVec part;
        if (n >= 1) {
            mod.b_column(n, w, part);
            int64_t off = offset(m - 1, p);
            for (const auto& [i, c] : part) out.emplace_back(i + off, c);
        }
        if (p >= 1) {
            mod.connes_B_column(n, w, part);
            int64_t off = offset(m - 1, p - 1);
            for (const auto& [i, c] : part) out.emplace_back(i + off, c);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    }
};

// HC_m = dim T_m - rank D_m - rank D_{m+1}, reported for m <= max_report.
template <typename Module>
HomologyResult cyclic_dims(const Module& mod, int max_report) {
    TotalComplex<Module> tot{mod};
    int top = mod.max_degree();
    if (max_report > top - 1) throw input_error("cyclic_dims: report range needs chains one degree higher");
    bool fast = mod.all_real();
    std::vector<size_t> rank(static_cast<size_t>(top) + 2, 0);
    for (int m = 1; m <= max_report + 1; ++m) {
        int64_t count = tot.dim(m);
        rank[m] = exact_rank(
            count,
            [&](int64_t j, GRVec& col) {
                int p = 0;
                int64_t w = j;
                while (w >= tot.block_dim(m, p)) {
                    w -= tot.block_dim(m, p);
                    ++p;
                }
                tot.column(m, p, w, col);
            },
            fast);
    }
    HomologyResult r;
    for (int m = 0; m <= max_report; ++m)
        r.dims[m] = tot.dim(m) - static_cast<int64_t>(rank[m]) - static_cast<int64_t>(rank[m + 1]);
    return r;
}

struct HPResult {
    int64_t even = 0;
    int64_t odd = 0;
    bool stabilized = false;
    HomologyResult hc;  // the window of HC dimensions used
};

// Periodic cyclic homology detected from the S-tower inside a window:
// S: HC_m -> HC_{m-2} drops the first bicomplex block.  The result is
// asserted only when the top S maps of each parity are isomorphisms.
template <typename Module>
HPResult periodic_dims(const Module& mod, int window) {
    if (window < 4) throw input_error("hp: window must be at least 4");
    if (mod.max_degree() < window + 1)
        throw input_error("hp: module must be built to degree window + 1");
    TotalComplex<Module> tot{mod};

    // Homology bases of T_m for m <= window.
    std::vector<QuotientBasis<GaussianRational>> hom(static_cast<size_t>(window) + 1);
    std::vector<std::vector<SparseVec<GaussianRational>>> kernels(static_cast<size_t>(window) + 1);
    GRVec col;
    for (int m = 0; m <= window; ++m) {
        RecordingEchelon<GaussianRational> rec;
        int64_t j = 0;
        for (int p = 0; p <= m / 2; ++p)
            for (int64_t w = 0; w < tot.block_dim(m, p); ++w, ++j) {
                tot.column(m, p, w, col);
                auto ker = rec.insert(j, std::move(col));
                if (!ker.empty()) kernels[m].push_back(std::move(ker));
            }
        // image of D_{m+1}
        for (int p = 0; p <= (m + 1) / 2; ++p)
            for (int64_t w = 0; w < tot.block_dim(m + 1, p); ++w) {
                tot.column(m + 1, p, w, col);
                if (!col.empty()) hom[m].add_image_column(std::move(col));
            }
        for (const auto& k : kernels[m]) hom[m].offer_cycle(k);
    }

    HPResult res;
    for (int m = 0; m <= window; ++m) res.hc.dims[m] = static_cast<int64_t>(hom[m].dimension());

    // Induced S maps at the top of the window.
    auto s_iso = [&](int m) -> bool {
        size_t ds = hom[m].dimension(), dt = hom[m - 2].dimension();
        if (ds != dt) return false;
        std::vector<std::vector<GaussianRational>> mat;
        int64_t shift = tot.block_dim(m, 0);
        for (size_t k = 0; k < ds; ++k) {
            SparseVec<GaussianRational> img;
            for (const auto& [i, c] : hom[m].representative(k))
                if (i >= shift) img.emplace_back(i - shift, c);
            mat.push_back(hom[m - 2].coordinates(std::move(img)));
        }
        return dense_rank(std::move(mat)) == ds;
    };

    int top_even = window - (window % 2 == 0 ? 0 : 1);
    int top_odd = window - (window % 2 == 1 ? 0 : 1);
    bool ok = true;
    auto require = [&](int m) {
        if (m >= 2) ok = ok && s_iso(m);
    };
    require(top_even);
    require(top_odd);
    if (window >= 6) {
        require(top_even - 2);
        require(top_odd - 2);
    }
    res.stabilized = ok;
    if (ok) {
        res.even = res.hc.dims[top_even];
        res.odd = res.hc.dims[top_odd];
    }
    return res;
}

// ---------------------------------------------------------------------------
// Materialized operators.
// ---------------------------------------------------------------------------

// Columns of the boundary b_n: C_n -> C_{n-1} for 1 <= n <= top.
template <typename Module>
std::vector<GRVec> hochschild_b(const Module& mod, int n) {
    if (n < 1 || n > mod.max_degree()) throw input_error("hochschild_b: degree out of range");
    std::vector<GRVec> cols(static_cast<size_t>(mod.dim(n)));
    for (int64_t w = 0; w < mod.dim(n); ++w) mod.b_column(n, w, cols[static_cast<size_t>(w)]);
    return cols;
}

// Columns of the Connes operator B_n: C_n -> C_{n+1}; requires identities.
template <typename Module>
std::vector<GRVec> connes_B(const Module& mod, int n) {
    if (n < 0 || n + 1 > mod.max_degree()) throw input_error("connes_B: degree out of range");
    std::vector<GRVec> cols(static_cast<size_t>(mod.dim(n)));
    for (int64_t w = 0; w < mod.dim(n); ++w)
        mod.connes_B_column(n, w, cols[static_cast<size_t>(w)]);
    return cols;
}

// Mixed complex: chain dimensions with the b and B matrices, the defining
// identities re-verified on construction.
struct MixedComplex {
    std::vector<int64_t> dims;          // dims[n], 0 <= n <= top
    std::vector<std::vector<GRVec>> b;  // b[n] for 1 <= n <= top
    std::vector<std::vector<GRVec>> B;  // B[n] for 0 <= n <= top-1

    template <typename Module>
    static MixedComplex build(const Module& mod) {
        MixedComplex mc;
        int top = mod.max_degree();
        mc.dims.resize(static_cast<size_t>(top) + 1);
        mc.b.resize(static_cast<size_t>(top) + 1);
        mc.B.resize(static_cast<size_t>(top));
        for (int n = 0; n <= top; ++n) mc.dims[static_cast<size_t>(n)] = mod.dim(n);
        for (int n = 1; n <= top; ++n) mc.b[static_cast<size_t>(n)] = hochschild_b(mod, n);
        for (int n = 0; n < top; ++n) mc.B[static_cast<size_t>(n)] = connes_B(mod, n);
        mc.verify();
        return mc;
    }

    void verify() const {
        auto apply = [](const std::vector<GRVec>& mat, const GRVec& v) {
            std::unordered_map<int64_t, GaussianRational> acc;
            for (const auto& [i, c] : v) sv_accumulate(acc, c, mat[static_cast<size_t>(i)]);
            return sv_from_accumulator(acc);
        };
        int top = static_cast<int>(dims.size()) - 1;
        for (int n = 2; n <= top; ++n)
            for (const auto& col : b[static_cast<size_t>(n)])
                if (!apply(b[static_cast<size_t>(n - 1)], col).empty())
                    throw contract_error("mixed complex: b^2 != 0");
        for (int n = 0; n + 2 <= top; ++n)
            for (const auto& col : B[static_cast<size_t>(n)])
                if (!apply(B[static_cast<size_t>(n + 1)], col).empty())
                    throw contract_error("mixed complex: B^2 != 0");
        for (int n = 0; n + 1 <= top; ++n) {
            for (int64_t w = 0; w < dims[static_cast<size_t>(n)]; ++w) {
                std::unordered_map<int64_t, GaussianRational> acc;
                sv_accumulate(acc, GaussianRational(1),
                              apply(b[static_cast<size_t>(n + 1)],
                                    B[static_cast<size_t>(n)][static_cast<size_t>(w)]));
                if (n >= 1)
                    sv_accumulate(acc, GaussianRational(1),
                                  apply(B[static_cast<size_t>(n - 1)],
                                        b[static_cast<size_t>(n)][static_cast<size_t>(w)]));
                if (!sv_from_accumulator(acc).empty())
                    throw contract_error("mixed complex: bB + Bb != 0");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Operator identity checks (the arbiter suite).
// ---------------------------------------------------------------------------

struct IdentityReport {
    bool simplicial = true;
    bool t_order = true;   // t^{n+1} = id, checked when ungraded
    bool b_squared = true;
    bool B_squared = true;
    bool anticommute = true;
    bool ok() const { return simplicial && t_order && b_squared && B_squared && anticommute; }
};

template <typename Module, typename ColFn>
GRVec apply_to_vec(const GRVec& v, ColFn&& col_of) {
    std::unordered_map<int64_t, GaussianRational> acc;
    GRVec col;
    for (const auto& [w, c] : v) {
        col_of(w, col);
        sv_accumulate(acc, c, col);
    }
    return sv_from_accumulator(acc);
}

// Verifies the cyclic-module identities exactly up to degree n_max (module
// must be built to n_max).  with_B requires identities in the presentation.
template <typename Module>
IdentityReport verify_identities(const Module& mod, bool with_B = true) {
    IdentityReport rep;
    int top = mod.max_degree();
    GRVec fi, fj, tmp;
    for (int n = 1; n <= top; ++n) {
        for (int64_t w = 0; w < mod.dim(n); ++w) {
            // simplicial identities face_i face_j = face_{j-1} face_i, i < j
            if (n >= 2) {
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i) {
                        mod.face_column(n, j, w, fj);
                        GRVec lhs = apply_to_vec<Module>(
                            fj, [&](int64_t u, GRVec& c) { mod.face_column(n - 1, i, u, c); });
                        mod.face_column(n, i, w, fi);
                        GRVec rhs = apply_to_vec<Module>(
                            fi, [&](int64_t u, GRVec& c) { mod.face_column(n - 1, j - 1, u, c); });
                        if (lhs != rhs) rep.simplicial = false;
                    }
            }
            // b^2 = 0
            mod.b_column(n, w, fi);
            GRVec b2 = apply_to_vec<Module>(
                fi, [&](int64_t u, GRVec& c) { mod.b_column(n - 1, u, c); });
            if (!b2.empty()) rep.b_squared = false;
        }
    }
    if (mod.ungraded()) {
        for (int n = 0; n <= top; ++n)
            for (int64_t w = 0; w < mod.dim(n); ++w) {
                int64_t cur = w;
                GaussianRational sign(1);
                for (int r = 0; r <= n; ++r) {
                    auto [nw, nc] = mod.t_image(n, cur);
                    cur = nw;
                    sign *= nc;
                }
                if (cur != w || !sign.is_one()) rep.t_order = false;
            }
    }
    if (with_B) {
        for (int n = 0; n + 2 <= top; ++n)
            for (int64_t w = 0; w < mod.dim(n); ++w) {
                mod.connes_B_column(n, w, fi);
                GRVec bb = apply_to_vec<Module>(
                    fi, [&](int64_t u, GRVec& c) { mod.connes_B_column(n + 1, u, c); });
                if (!bb.empty()) rep.B_squared = false;
            }
        for (int n = 0; n + 1 <= top; ++n)
            for (int64_t w = 0; w < mod.dim(n); ++w) {
                mod.connes_B_column(n, w, fi);
                GRVec t1 = apply_to_vec<Module>(
                    fi, [&](int64_t u, GRVec& c) { mod.b_column(n + 1, u, c); });
                std::unordered_map<int64_t, GaussianRational> acc;
                sv_accumulate(acc, GaussianRational(1), t1);
                if (n >= 1) {
                    mod.b_column(n, w, fj);
                    GRVec t2 = apply_to_vec<Module>(
                        fj, [&](int64_t u, GRVec& c) { mod.connes_B_column(n - 1, u, c); });
                    sv_accumulate(acc, GaussianRational(1), t2);
                }
                if (!sv_from_accumulator(acc).empty()) rep.anticommute = false;
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Morita comparison: HH and HC dimension tables of A and M_n(A), computed on
// both sides by direct elimination, to degree n_max - 1.
// ---------------------------------------------------------------------------

struct MoritaReport {
    HomologyResult hh_a, hh_m, hc_a, hc_m;
    bool equal = false;
};

inline MoritaReport morita_check(const AlgebraPresentation& a, size_t n, int n_max,
                                 int64_t budget = 200000) {
    AlgebraCyclic ma(a, n_max, budget);
    AlgebraCyclic mm(matrix_algebra(a, n), n_max, budget);
    MoritaReport rep;
    rep.hh_a = hochschild_dims(ma);
    rep.hh_m = hochschild_dims(mm);
    rep.hc_a = cyclic_dims(ma, n_max - 1);
    rep.hc_m = cyclic_dims(mm, n_max - 1);
    rep.equal = rep.hh_a.dims == rep.hh_m.dims && rep.hc_a.dims == rep.hc_m.dims;
    return rep;
}

}  // namespace ncw
