#include <catch2/catch_amalgamated.hpp>

#include "ncw/cyclic.hpp"
#include "ncw/oracle.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;

namespace {

// Endomorphism dg algebra of the contractible two-term complex k -> k:
// basis x0, x1 (degree 0), e (degree 1), h (degree -1) with nonzero
// differential.  Its graded letters have nonzero products in both odd
// degrees, which pins down the Koszul signs in the wrap face and t.
DgCategoryPresentation endomorphism_dg_algebra() {
    DgCategoryPresentation::Hom hm;
    hm.names = {"x0", "x1", "e", "h"};
    hm.degrees = {0, 0, 1, -1};
    auto one = [](int64_t k) { return GRVec{{k, GaussianRational(1)}}; };
    std::vector<std::vector<GRVec>> diff(1);
    diff[0] = {one(2), GRVec{{2, -GaussianRational(1)}}, GRVec{},
               GRVec{{0, GaussianRational(1)}, {1, GaussianRational(1)}}};
    // compose(g, f) = g after f; table indexed g*4 + f
    std::vector<std::vector<GRVec>> comp(1);
    comp[0].assign(16, GRVec{});
    auto set = [&](int g, int f, GRVec v) { comp[0][static_cast<size_t>(g * 4 + f)] = std::move(v); };
    set(0, 0, one(0));  // x0 x0 = x0
    set(1, 1, one(1));
    set(2, 0, one(2));  // e x0 = e
    set(1, 2, one(2));  // x1 e = e
    set(3, 1, one(3));  // h x1 = h
    set(0, 3, one(3));  // x0 h = h
    set(2, 3, one(1));  // e h = x1
    set(3, 2, one(0));  // h e = x0
    std::vector<GRVec> ids = {GRVec{{0, GaussianRational(1)}, {1, GaussianRational(1)}}};
    return DgCategoryPresentation(1, {hm}, diff, comp, ids);
}

}  // namespace

TEST_CASE("cyclic module of the base field") {
    AlgebraCyclic q(presets::field_q(), 3);
    CHECK(q.dim(2) == 1);
    GRVec col;
    for (int i = 0; i <= 2; ++i) {
        q.face_column(2, i, 0, col);
        REQUIRE(col == GRVec{{0, GaussianRational(1)}});
    }
    auto [img, sign] = q.t_image(2, 0);
    CHECK(img == 0);
    CHECK(sign.is_one());
}

TEST_CASE("the sign of t on the printed degree pattern") {
    // word of length 3 with deg f_0 = 1 and the others 0: exponent 2, sign +1
    CategoryCyclic m(selftest::square_zero_endomorphism_category(), 3, 100000);
    // letters digit j = slot j; u has index 1, id has index 0
    int64_t w = m.encode(2, {0, 0, 0}, {1, 0, 0});
    auto [img, sign] = m.t_image(2, w);
    CHECK(sign.is_one());
    CHECK(img == m.encode(2, {0, 0, 0}, {0, 0, 1}));
}

TEST_CASE("identity suite for shipped algebras") {
    for (const auto& [name, alg] : selftest::shipped_algebras()) {
        AlgebraCyclic mod(alg, 5, 500000);
        IdentityReport rep = verify_identities(mod);
        INFO(name);
        CHECK(rep.simplicial);
        CHECK(rep.t_order);
        CHECK(rep.b_squared);
        CHECK(rep.B_squared);
        CHECK(rep.anticommute);
    }
}

TEST_CASE("identity suite for graded categories") {
    CategoryCyclic u(selftest::square_zero_endomorphism_category(), 5, 500000);
    IdentityReport rep = verify_identities(u);
    CHECK(rep.ok());

    CategoryCyclic endo(endomorphism_dg_algebra(), 4, 500000);
    IdentityReport rep2 = verify_identities(endo);
    CHECK(rep2.simplicial);
    CHECK(rep2.b_squared);
    CHECK(rep2.B_squared);
    CHECK(rep2.anticommute);
}

TEST_CASE("Hochschild and cyclic homology of the base field") {
    AlgebraCyclic q(presets::field_q(), 4);
    HomologyResult hh = hochschild_dims(q);
    CHECK(hh.dims.at(0) == 1);
    CHECK(hh.dims.at(1) == 0);
    CHECK(hh.dims.at(2) == 0);
    CHECK(hh.dims.at(3) == 0);
    HomologyResult hc = cyclic_dims(q, 2);
    CHECK(hc.dims.at(0) == 1);
    CHECK(hc.dims.at(1) == 0);
    CHECK(hc.dims.at(2) == 1);
}

TEST_CASE("HH_0 equals the commutator corank") {
    for (const auto& [name, alg] : selftest::shipped_algebras()) {
        AlgebraCyclic mod(alg, 2, 500000);
        HomologyResult hh = hochschild_dims(mod);
        INFO(name);
        CHECK(hh.dims.at(0) ==
              static_cast<int64_t>(alg.dim()) - static_cast<int64_t>(commutator_rank(alg)));
    }
    CHECK(commutator_rank(presets::matrix_q(2)) == 3);  // trace-zero matrices
}

TEST_CASE("bar and Connes-quotient oracles agree with the engine") {
    std::vector<std::pair<std::string, AlgebraPresentation>> small{
        {"QxQ", presets::q_times_q()},
        {"Q[x]/(x^2)", presets::dual_numbers()},
        {"A2 path algebra", presets::path_a2()}};
    for (const auto& [name, alg] : small) {
        AlgebraCyclic mod(alg, 4, 500000);
        HomologyResult hh = hochschild_dims(mod);
        HomologyResult hc = cyclic_dims(mod, 3);
        auto hh_o = oracle::hochschild_dims(alg, 3);
        auto hc_o = oracle::connes_lambda_dims(alg, 3);
        INFO(name);
        for (int n = 0; n <= 3; ++n) {
            CHECK(hh.dims.at(n) == hh_o[static_cast<size_t>(n)]);
            CHECK(hc.dims.at(n) == hc_o[static_cast<size_t>(n)]);
        }
    }
}

TEST_CASE("Morita comparison at small size") {
    MoritaReport rep = morita_check(presets::field_q(), 2, 4);
    CHECK(rep.equal);
    MoritaReport rep2 = morita_check(presets::dual_numbers(), 2, 4, 500000);
    CHECK(rep2.equal);
    CHECK(rep2.hh_a.dims.at(0) == 2);
    // n = 1 is trivial
    CHECK(morita_check(presets::path_a2(), 1, 3).equal);
    // HC_0(M_2) = dim A/[A,A] = 1
    AlgebraCyclic m2(presets::matrix_q(2), 3, 500000);
    CHECK(cyclic_dims(m2, 1).dims.at(0) == 1);
}

TEST_CASE("Morita invariance across all shipped algebras") {
    for (const auto& [name, alg] : selftest::shipped_algebras()) {
        for (size_t n : {2, 3}) {
            // keep the table degree small when the matrix algebra gets large
            int n_max = (alg.dim() * n * n > 20) ? 2 : 3;
            INFO(name << " n=" << n);
            REQUIRE(morita_check(alg, n, n_max, 2000000).equal);
        }
    }
}

TEST_CASE("periodic homology with the S-tower") {
    AlgebraCyclic q(presets::field_q(), 5);
    HPResult hp = periodic_dims(q, 4);
    CHECK(hp.stabilized);
    CHECK(hp.even == 1);
    CHECK(hp.odd == 0);

    AlgebraCyclic m2(presets::matrix_q(2), 5, 500000);
    HPResult hp2 = periodic_dims(m2, 4);
    CHECK(hp2.stabilized);
    CHECK(hp2.even == hp.even);
    CHECK(hp2.odd == hp.odd);

    // The S maps of the dual numbers are never isomorphisms (the nilpotent
    // part dies), so a finite window must decline to assert a value.
    AlgebraCyclic dual(presets::dual_numbers(), 5, 500000);
    HPResult hp3 = periodic_dims(dual, 4);
    CHECK_FALSE(hp3.stabilized);

    CHECK_THROWS_AS(periodic_dims(q, 3), input_error);
}

TEST_CASE("budget are enforced with the offending dimension") {
    try {
        AlgebraCyclic mod(presets::matrix_q(2), 10, 100);
        FAIL("expected budget error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("budget exceeded") != std::string::npos);
        CHECK(std::string(e.what()).find("dimension") != std::string::npos);
    }
}

TEST_CASE("materialized boundary and Connes matrices") {
    // the boundary at word length 1 of a commutative algebra is a - b map: zero
    AlgebraCyclic dual(presets::dual_numbers(), 4, 500000);
    for (const auto& col : hochschild_b(dual, 1)) CHECK(col.empty());
    // MixedComplex re-verifies b^2 = B^2 = bB + Bb = 0 on construction
    CHECK_NOTHROW(MixedComplex::build(dual));
    AlgebraCyclic a2(presets::path_a2(), 4, 500000);
    MixedComplex mc = MixedComplex::build(a2);
    CHECK(mc.dims[2] == 27);
    CHECK_THROWS_AS(hochschild_b(dual, 9), input_error);
}

TEST_CASE("non-unital input: boundaries work, Connes operator refuses") {
    // one-dimensional algebra with x^2 = 0 and no unit
    AlgebraPresentation nil({"x"}, {GRVec{}}, std::nullopt);
    AlgebraCyclic mod(nil, 3);
    HomologyResult hh = hochschild_dims(mod);
    CHECK(hh.dims.at(0) == 1);
    CHECK(hh.dims.at(1) == 1);
    CHECK(hh.dims.at(2) == 1);
    CHECK_THROWS_AS(connes_B(mod, 0), input_error);
    CHECK_THROWS_AS(cyclic_dims(mod, 1), input_error);
}

TEST_CASE("zero algebra has vanishing homology") {
    AlgebraCyclic z(presets::zero_algebra(), 4);
    HomologyResult hc = cyclic_dims(z, 2);
    for (const auto& [n, d] : hc.dims) CHECK(d == 0);
}

TEST_CASE("one-object ungraded category reproduces the algebra matrices") {
    auto alg = presets::q_times_q();
    AlgebraCyclic am(alg, 4);
    CategoryCyclic cm(DgCategoryPresentation::of_algebra(alg), 4);
    GRVec c1, c2;
    for (int n = 1; n <= 4; ++n) {
        REQUIRE(am.dim(n) == cm.dim(n));
        for (int64_t w = 0; w < am.dim(n); ++w) {
            am.b_column(n, w, c1);
            cm.b_column(n, w, c2);
            REQUIRE(c1 == c2);
        }
    }
    for (int n = 0; n <= 3; ++n)
        for (int64_t w = 0; w < am.dim(n); ++w) {
            am.connes_B_column(n, w, c1);
            cm.connes_B_column(n, w, c2);
            REQUIRE(c1 == c2);
        }
}

TEST_CASE("graded homology of the square-zero endomorphism category") {
    // At word length 1 the two compositions of any letter pair agree, so b_1
    // vanishes and HH_0 is the full two-letter space.
    CategoryCyclic u(selftest::square_zero_endomorphism_category(), 4, 500000);
    GRVec col;
    for (int64_t w = 0; w < u.dim(1); ++w) {
        u.b_column(1, w, col);
        REQUIRE(col.empty());
    }
    HomologyResult hh = hochschild_dims(u);
    CHECK(hh.dims.at(0) == 2);
}
