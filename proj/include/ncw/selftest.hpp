#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncw/connection.hpp"
#include "ncw/cyclic.hpp"
#include "ncw/elliptic.hpp"
#include "ncw/heisenberg.hpp"
#include "ncw/oracle.hpp"

namespace ncw::selftest {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string detail;
    double seconds = 0.0;

    void fail(const std::string& why) {
        passed = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    uint64_t next() { return gen_(); }
    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }
    bool chance(int percent) { return range(0, 99) < percent; }

private:
    std::mt19937_64 gen_;
};

// --- random inputs ----------------------------------------------------------

inline GaussianRational random_gaussian_rational(Rng& rng) {
    Rational re = make_rational(rng.range(-3, 3), rng.range(1, 3));
    if (rng.chance(25)) return GaussianRational(re, make_rational(rng.range(-2, 2), 1));
    return GaussianRational(re);
}

inline SymbolicScalar random_scalar(Rng& rng) {
    GaussianRational c = random_gaussian_rational(rng);
    if (c.is_zero()) c = GaussianRational(1);
    SymbolicScalar s(c);
    if (rng.chance(50)) {
        Unit u = static_cast<Unit>(rng.range(0, 4));
        int32_t e = static_cast<int32_t>(u == Unit::Lambda ? rng.range(-2, 2) : rng.range(0, 2));
        s *= SymbolicScalar::unit(u, e);
    }
    if (rng.chance(20)) s += SymbolicScalar(random_gaussian_rational(rng));
    if (rng.chance(10)) {
        // a simple denominator, e.g. 1/(1 + theta)
        Polynomial den{GaussianRational(1)};
        den += Polynomial::unit_power(Unit::Theta, 1).scaled(GaussianRational(rng.range(1, 2)));
        s = s * SymbolicScalar(Polynomial{GaussianRational(1)}, den);
    }
    return s;
}

inline NCElement random_nc(Rng& rng, int max_terms) {
    NCElement e;
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t)
        e.add_term(rng.range(-2, 2), rng.range(-2, 2), random_scalar(rng));
    return e;
}

inline GaussJet random_section(Rng& rng, const HeisenbergCharge& ch, bool tame = false) {
    GaussJet f(ch);
    int classes = static_cast<int>(ch.num_classes());
    int nterms = static_cast<int>(rng.range(1, 2));
    for (int t = 0; t < nterms; ++t) {
        int64_t alpha = rng.range(0, classes - 1);
        std::vector<SymbolicScalar> coeffs;
        int deg = static_cast<int>(rng.range(0, 2));
        for (int d = 0; d <= deg; ++d)
            coeffs.push_back(tame ? SymbolicScalar(rng.range(-2, 2)) : random_scalar(rng));
        if (coeffs.back().is_zero()) coeffs.back() = SymbolicScalar(1);
        auto small_q = [&](bool quad) -> SymbolicScalar {
            if (quad && rng.chance(50)) return SymbolicScalar(0);
            SymbolicScalar v(rng.range(-1, 1));
            if (!tame && rng.chance(40)) v *= SymbolicScalar::unit(static_cast<Unit>(rng.range(0, 4)));
            if (tame && rng.chance(30)) v = v * SymbolicScalar(make_rational(1, 2));
            return v;
        };
        f.add_term(alpha, GaussTerm(PolyX(std::move(coeffs)), small_q(true), small_q(false),
                                    small_q(false)));
    }
    return f;
}

// --- timing helper -----------------------------------------------------------

template <typename Fn>
SuiteResult timed(const std::string& name, Fn&& body) {
    SuiteResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

// --- suite 1: A_theta ring axioms --------------------------------------------

inline SuiteResult suite_algebra(uint64_t seed, int trials = 500) {
    return timed("algebra: associativity/unit/distributivity", [&](SuiteResult& r) {
        Rng rng(seed);
        NCElement one(1);
        for (int t = 0; t < trials; ++t) {
            NCElement a = random_nc(rng, 4), b = random_nc(rng, 4), c = random_nc(rng, 4);
            if (!(nc_mul(nc_mul(a, b), c) == nc_mul(a, nc_mul(b, c)))) {
                r.fail("associativity failed at trial " + std::to_string(t));
                return;
            }
            if (!(nc_mul(one, a) == a && nc_mul(a, one) == a)) {
                r.fail("unit law failed at trial " + std::to_string(t));
                return;
            }
            if (!(nc_mul(a, b + c) == nc_mul(a, b) + nc_mul(a, c))) {
                r.fail("distributivity failed at trial " + std::to_string(t));
                return;
            }
        }
        r.detail = std::to_string(trials) + " random triples";
    });
}

// --- suite 2: derivation and trace -------------------------------------------

inline SuiteResult suite_derivation(uint64_t seed, int trials = 500) {
    return timed("derivation: Leibniz and trace symmetry", [&](SuiteResult& r) {
        Rng rng(seed + 1);
        for (int t = 0; t < trials; ++t) {
            NCElement a = random_nc(rng, 4), b = random_nc(rng, 4);
            if (!derivation_check(a, b).is_zero()) {
                r.fail("delta_tau Leibniz failed at trial " + std::to_string(t));
                return;
            }
            if (!(nc_trace(nc_mul(a, b)) == nc_trace(nc_mul(b, a)))) {
                r.fail("trace symmetry failed at trial " + std::to_string(t));
                return;
            }
        }
        r.detail = std::to_string(trials) + " random pairs";
    });
}

// --- suite 3: the Leibniz gate on Heisenberg modules --------------------------

inline std::map<Unit, std::complex<double>> numeric_assignment() {
    double theta0 = std::sqrt(2.0) - 1.0;
    const double pi = 3.14159265358979323846;
    std::map<Unit, std::complex<double>> vals;
    vals[Unit::Theta] = theta0;
    vals[Unit::Lambda] = std::exp(std::complex<double>(0.0, 2.0 * pi * theta0));
    vals[Unit::C] = std::complex<double>(0.0, 2.0 * pi);
    vals[Unit::Tau] = std::complex<double>(0.3, 0.7);
    vals[Unit::Z] = std::complex<double>(0.25, -0.4);
    return vals;
}

inline SuiteResult suite_leibniz(uint64_t seed, int section_trials = 50) {
    return timed("bundles: Leibniz gate and numeric derivative", [&](SuiteResult& r) {
        Rng rng(seed + 2);
        std::vector<HeisenbergCharge> charges{{1, 1}, {1, 2}, {2, -1}, {0, 1}};
        std::vector<NCElement> gens{NCElement::u1(), NCElement::u2(),
                                    nc_mul(NCElement::u1(), NCElement::u2())};
        for (const auto& ch : charges) {
            GaussJet one = GaussJet::unit_class(ch, 0);
            for (const auto& a : gens) {
                if (!leibniz_residual(one, a, ch).is_zero()) {
                    r.fail("generator residual nonzero at charge (" + std::to_string(ch.n) + "," +
                           std::to_string(ch.m) + ")");
                    return;
                }
            }
        }
        for (int t = 0; t < section_trials; ++t) {
            const auto& ch = charges[static_cast<size_t>(rng.range(0, 3))];
            GaussJet f = random_section(rng, ch);
            const auto& a = gens[static_cast<size_t>(rng.range(0, 2))];
            if (!leibniz_residual(f, a, ch).is_zero()) {
                r.fail("random-section residual nonzero at trial " + std::to_string(t));
                return;
            }
        }
        // numeric cross-check of nabla_z by central differences
        auto vals = numeric_assignment();
        const double h = 1e-5;
        double worst = 0.0;
        for (const auto& ch : std::vector<HeisenbergCharge>{{1, 1}, {1, 2}, {2, -1}}) {
            GaussJet f = random_section(rng, ch, /*tame=*/true);
            GaussJet df = nabla_z(f, ch);
            double theta0 = vals.at(Unit::Theta).real();
            std::complex<double> mu =
                static_cast<double>(ch.m) /
                (static_cast<double>(ch.n) + theta0 * static_cast<double>(ch.m));
            for (int k = 0; k < 10; ++k) {
                double x = -0.9 + 0.2 * k;
                for (int64_t alpha = 0; alpha < ch.num_classes(); ++alpha) {
                    std::complex<double> fd =
                        (f.evaluate(x + h, alpha, vals) - f.evaluate(x - h, alpha, vals)) /
                        (2.0 * h);
                    std::complex<double> expect =
                        fd + vals.at(Unit::C) * (vals.at(Unit::Tau) * mu * x + vals.at(Unit::Z)) *
                                 f.evaluate(x, alpha, vals);
                    std::complex<double> got = df.evaluate(x, alpha, vals);
                    double rel = std::abs(got - expect) / (1.0 + std::abs(expect));
                    worst = std::max(worst, rel);
                }
            }
        }
        if (worst > 1e-6) {
            r.fail("finite-difference error " + std::to_string(worst));
            return;
        }
        std::ostringstream os;
        os << section_trials << " random sections, fd error " << worst;
        r.detail = os.str();
    });
}

// --- suite 4: connection lifting ----------------------------------------------

inline SuiteResult suite_lifting(uint64_t seed, int trials = 100) {
    return timed("connections: lifting along free surjections", [&](SuiteResult& r) {
        Rng rng(seed + 3);
        for (int t = 0; t < trials; ++t) {
            size_t q = static_cast<size_t>(rng.range(1, 3));
            size_t p = static_cast<size_t>(rng.range(static_cast<int64_t>(q), 3));
            // F = [I | G] P,  S = P^T [I; 0]  so that F S = I by construction
            std::vector<size_t> perm(p);
            for (size_t i = 0; i < p; ++i) perm[i] = i;
            for (size_t i = p; i > 1; --i)
                std::swap(perm[i - 1], perm[static_cast<size_t>(rng.range(0, static_cast<int64_t>(i) - 1))]);
            NCMatrix F(q, p), S(p, q);
            for (size_t i = 0; i < q; ++i)
                for (size_t j = 0; j < p; ++j) {
                    size_t col = perm[j];
                    if (j < q)
                        F.at(i, col) = (i == j) ? NCElement(1) : NCElement();
                    else
                        F.at(i, col) = rng.chance(60) ? random_nc(rng, 2) : NCElement();
                }
            for (size_t j = 0; j < q; ++j) S.at(perm[j], j) = NCElement(1);
            NCMatrix B2(q, q);
            for (size_t i = 0; i < q; ++i)
                for (size_t j = 0; j < q; ++j)
                    if (rng.chance(50)) B2.at(i, j) = random_nc(rng, 2);
            NCMatrix B1 = lift_connection(F, S, B2);
            if (!(F * B1 == delta_tau(F) + B2 * F)) {
                r.fail("intertwining identity failed at trial " + std::to_string(t));
                return;
            }
        }
        // identity surjection returns B2 unchanged
        NCMatrix I = NCMatrix::identity(2), B2(2, 2);
        B2.at(0, 1) = NCElement::u1();
        B2.at(1, 0) = NCElement(SymbolicScalar::c() * SymbolicScalar::z());
        if (!(lift_connection(I, I, B2) == B2)) {
            r.fail("identity surjection did not return B2");
            return;
        }
        r.detail = std::to_string(trials) + " random (F,S,B2)";
    });
}

// --- shipped presentations -----------------------------------------------------

inline std::vector<std::pair<std::string, AlgebraPresentation>> shipped_algebras() {
    return {{"Q", presets::field_q()},
            {"Q[x]/(x^2)", presets::dual_numbers()},
            {"QxQ", presets::q_times_q()},
            {"M2(Q)", presets::matrix_q(2)},
            {"A2 path algebra", presets::path_a2()}};
}

inline DgCategoryPresentation square_zero_endomorphism_category() {
    DgCategoryPresentation::Hom h;
    h.names = {"id", "u"};
    h.degrees = {0, 1};
    std::vector<std::vector<GRVec>> diff(1);
    diff[0] = {GRVec{}, GRVec{}};
    std::vector<std::vector<GRVec>> comp(1);
    comp[0].resize(4);
    comp[0][0 * 2 + 0] = GRVec{{0, GaussianRational(1)}};
    comp[0][0 * 2 + 1] = GRVec{{1, GaussianRational(1)}};
    comp[0][1 * 2 + 0] = GRVec{{1, GaussianRational(1)}};
    std::vector<GRVec> ids = {GRVec{{0, GaussianRational(1)}}};
    return DgCategoryPresentation(1, {h}, diff, comp, ids);
}

// --- suite 5: cyclic operator identities ---------------------------------------

inline SuiteResult suite_cyclic_identities() {
    return timed("cyclic: operator identity suite", [&](SuiteResult& r) {
        for (const auto& [name, alg] : shipped_algebras()) {
            AlgebraCyclic mod(alg, 5, 500000);
            IdentityReport rep = verify_identities(mod);
            if (!rep.ok()) {
                r.fail(name + ": simplicial=" + std::to_string(rep.simplicial) +
                       " t=" + std::to_string(rep.t_order) + " b2=" + std::to_string(rep.b_squared) +
                       " B2=" + std::to_string(rep.B_squared) +
                       " anti=" + std::to_string(rep.anticommute));
                return;
            }
        }
        CategoryCyclic graded(square_zero_endomorphism_category(), 5, 500000);
        IdentityReport rep = verify_identities(graded);
        if (!rep.ok()) {
            r.fail("graded square-zero category failed the identity suite");
            return;
        }
        r.detail = "5 algebras to degree 5 plus the graded square-zero category";
    });
}

// --- suite 6: homology values ---------------------------------------------------

inline SuiteResult suite_homology_values() {
    return timed("cyclic: homology values and oracles", [&](SuiteResult& r) {
        {
            AlgebraCyclic q(presets::field_q(), 4);
            HomologyResult hh = hochschild_dims(q);
            std::vector<int64_t> want{1, 0, 0, 0};
            for (int n = 0; n <= 3; ++n)
                if (hh.dims.at(n) != want[static_cast<size_t>(n)]) {
                    r.fail("HH(Q) wrong at degree " + std::to_string(n));
                    return;
                }
            HomologyResult hc = cyclic_dims(q, 2);
            if (hc.dims.at(0) != 1 || hc.dims.at(1) != 0 || hc.dims.at(2) != 1) {
                r.fail("HC(Q) != (1,0,1)");
                return;
            }
        }
        for (const auto& [name, alg] : shipped_algebras()) {
            AlgebraCyclic mod(alg, 2, 500000);
            HomologyResult hh = hochschild_dims(mod);
            int64_t expect = static_cast<int64_t>(alg.dim()) -
                             static_cast<int64_t>(commutator_rank(alg));
            if (hh.dims.at(0) != expect) {
                r.fail("HH_0(" + name + ") != dim A/[A,A]");
                return;
            }
        }
        // bar-complex oracle agreement on small algebras to degree 3
        std::vector<std::pair<std::string, AlgebraPresentation>> small{
            {"Q", presets::field_q()},
            {"QxQ", presets::q_times_q()},
            {"Q[x]/(x^2)", presets::dual_numbers()},
            {"A2 path algebra", presets::path_a2()}};
        for (const auto& [name, alg] : small) {
            AlgebraCyclic mod(alg, 4, 500000);
            HomologyResult hh = hochschild_dims(mod);
            HomologyResult hc = cyclic_dims(mod, 3);
            auto hh_oracle = oracle::hochschild_dims(alg, 3);
            auto hc_oracle = oracle::connes_lambda_dims(alg, 3);
            for (int n = 0; n <= 3; ++n) {
                if (hh.dims.at(n) != hh_oracle[static_cast<size_t>(n)]) {
                    r.fail("HH oracle mismatch for " + name + " at degree " + std::to_string(n));
                    return;
                }
                if (hc.dims.at(n) != hc_oracle[static_cast<size_t>(n)]) {
                    r.fail("HC oracle mismatch for " + name + " at degree " + std::to_string(n));
                    return;
                }
            }
        }
        r.detail = "frozen values, commutator oracle, bar and Connes-quotient oracles";
    });
}

// --- suite 7: Morita comparison -------------------------------------------------

inline SuiteResult suite_morita(int64_t budget = 4000000) {
    return timed("cyclic: Morita dimension tables", [&](SuiteResult& r) {
        struct Case {
            const char* name;
            AlgebraPresentation a;
            size_t n;
            int n_max;
        };
        std::vector<Case> cases;
        cases.push_back({"Q, n=2, to degree 4", presets::field_q(), 2, 5});
        cases.push_back({"Q, n=3, to degree 4", presets::field_q(), 3, 5});
        cases.push_back({"Q[x]/(x^2), n=2, to degree 3", presets::dual_numbers(), 2, 4});
        cases.push_back({"Q[x]/(x^2), n=3, to degree 3", presets::dual_numbers(), 3, 4});
        for (const auto& c : cases) {
            MoritaReport rep = morita_check(c.a, c.n, c.n_max, budget);
            if (!rep.equal) {
                r.fail(std::string("tables differ for ") + c.name);
                return;
            }
        }
        r.detail = "4 cases, HH and HC tables equal";
    });
}

// --- suite 8: t-structure statistics --------------------------------------------

inline StablePiece random_stable(Rng& rng) {
    for (;;) {
        int64_t rr = rng.range(0, 4);
        if (rr == 0) {
            return StablePiece(Charge(0, 1), std::string(1, static_cast<char>('a' + rng.range(0, 2))));
        }
        int64_t dd = rng.range(-7, 7);
        if (std::gcd(rr, dd < 0 ? -dd : dd) != 1) continue;
        return StablePiece(Charge(rr, dd), std::string(1, static_cast<char>('a' + rng.range(0, 2))));
    }
}

inline FormalObject random_object(Rng& rng) {
    FormalObject x;
    int n = static_cast<int>(rng.range(1, 4));
    for (int i = 0; i < n; ++i) x.add(rng.range(-2, 2), random_stable(rng), rng.range(1, 3));
    return x;
}

inline SuiteResult suite_tstructure(uint64_t seed, int objects = 1000, int thetas = 10) {
    return timed("elliptic: t-structure suite", [&](SuiteResult& r) {
        Rng rng(seed + 4);
        std::vector<Theta> ths;
        std::vector<int64_t> ds{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
        for (int i = 0; i < thetas; ++i)
            ths.emplace_back(QuadraticSurd(rng.range(-3, 3), rng.range(1, 3),
                                           ds[static_cast<size_t>(i % 10)], rng.range(1, 4)));
        int64_t heart_pieces = 0;
        int64_t adjunction_checks = 0;
        for (int i = 0; i < objects; ++i) {
            FormalObject x = random_object(rng);
            for (int rep = 0; rep < 2; ++rep) {
                const Theta& th = ths[static_cast<size_t>((i * 2 + rep) % thetas)];
                Truncation tr = truncate(x, th);
                if (!(tr.below + tr.above == x)) {
                    r.fail("truncation is not a partition");
                    return;
                }
                Truncation again = truncate(tr.below, th);
                if (!again.above.empty() || !(again.below == tr.below)) {
                    r.fail("truncation not idempotent");
                    return;
                }
                if (!in_lower_aisle(tr.below.shifted(1), th) ||
                    !in_upper_aisle(tr.above.shifted(-1), th)) {
                    r.fail("shift stability (axiom i) failed");
                    return;
                }
                if (!splitting_check(x, th).ok()) {
                    r.fail("K0 splitting failed");
                    return;
                }
                if (!tr.below.empty() && !tr.above.empty()) {
                    HomVanishingReport hv = hom_vanishing_check(tr.below, tr.above, th);
                    if (!hv.vanishes()) {
                        r.fail("Hom(X0, X1) != 0 in the model");
                        return;
                    }
                }
                // adjunction at a random level with admissible X
                int64_t level = rng.range(-1, 1);
                FormalObject xl = truncate(x, th, level).below;
                if (!xl.empty()) {
                    FormalObject y = random_object(rng);
                    ++adjunction_checks;
                    if (!truncation_adjunction_check(xl, y, level, th)) {
                        r.fail("truncation adjunction failed");
                        return;
                    }
                }
                // heart pieces map to strictly positive-dimension charges
                for (const auto& s : x.summands()) {
                    SlopeClass cls = classify(s.piece.charge, th);
                    int64_t k = (cls == SlopeClass::Above) ? 0 : -1;
                    HeisenbergCharge hc = charge_to_heisenberg(k, s.piece, th);
                    (void)hc;
                    ++heart_pieces;
                }
            }
        }
        std::ostringstream os;
        os << objects << " objects x 2 thetas, " << adjunction_checks << " adjunction checks, "
           << heart_pieces << " heart charges";
        r.detail = os.str();
    });
}

// --- suite 9: one-object consistency ---------------------------------------------

inline SuiteResult suite_consistency() {
    return timed("cyclic: one-object category matches algebra pipeline", [&](SuiteResult& r) {
        for (const auto& [name, alg] : shipped_algebras()) {
            int n_max = alg.dim() > 2 ? 3 : 4;
            AlgebraCyclic am(alg, n_max, 500000);
            CategoryCyclic cm(DgCategoryPresentation::of_algebra(alg), n_max, 500000);
            for (int n = 0; n <= n_max; ++n)
                if (am.dim(n) != cm.dim(n)) {
                    r.fail(name + ": dimension mismatch at degree " + std::to_string(n));
                    return;
                }
            // identical matrices, not only equal homology
            GRVec c1, c2;
            for (int n = 1; n <= n_max; ++n)
                for (int64_t w = 0; w < am.dim(n); ++w) {
                    am.b_column(n, w, c1);
                    cm.b_column(n, w, c2);
                    if (c1 != c2) {
                        r.fail(name + ": boundary matrices differ at degree " + std::to_string(n));
                        return;
                    }
                }
            for (int n = 0; n + 1 <= n_max; ++n)
                for (int64_t w = 0; w < am.dim(n); ++w) {
                    am.connes_B_column(n, w, c1);
                    cm.connes_B_column(n, w, c2);
                    if (c1 != c2) {
                        r.fail(name + ": Connes operators differ at degree " + std::to_string(n));
                        return;
                    }
                }
            HomologyResult ha = hochschild_dims(am), hc_ = hochschild_dims(cm);
            if (ha.dims != hc_.dims) {
                r.fail(name + ": homology tables differ");
                return;
            }
            HomologyResult ca = cyclic_dims(am, n_max - 2), cc = cyclic_dims(cm, n_max - 2);
            if (ca.dims != cc.dims) {
                r.fail(name + ": cyclic tables differ");
                return;
            }
        }
        r.detail = "matrices and tables agree for all shipped algebras";
    });
}

// --- driver -----------------------------------------------------------------------

inline std::vector<SuiteResult> run_all(uint64_t seed, int64_t budget = 4000000) {
    std::vector<SuiteResult> rs;
    rs.push_back(suite_algebra(seed));
    rs.push_back(suite_derivation(seed));
    rs.push_back(suite_leibniz(seed));
    rs.push_back(suite_lifting(seed));
    rs.push_back(suite_cyclic_identities());
    rs.push_back(suite_homology_values());
    rs.push_back(suite_morita(budget));
    rs.push_back(suite_tstructure(seed));
    rs.push_back(suite_consistency());
    return rs;
}

}  // namespace ncw::selftest
