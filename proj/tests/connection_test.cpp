#include <catch2/catch_amalgamated.hpp>

#include "ncw/connection.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;

TEST_CASE("nabla on the standard rank-1 free module") {
    // B = (c z): nabla(U1) = c tau U1 + c z U1
    FreeConnection conn = FreeConnection::standard_z();
    NCMatrix v(1, 1);
    v.at(0, 0) = NCElement::u1();
    NCMatrix got = nabla_free(v, conn);
    SymbolicScalar expect = SymbolicScalar::c() * SymbolicScalar::tau() +
                            SymbolicScalar::c() * SymbolicScalar::z();
    CHECK(got.at(0, 0) == NCElement::monomial(1, 0, expect));

    NCMatrix zero_conn(1, 1);
    FreeConnection trivial(std::move(zero_conn));
    NCMatrix one(1, 1);
    one.at(0, 0) = NCElement(1);
    CHECK(nabla_free(one, trivial).is_zero());
    CHECK_THROWS_AS(nabla_free(NCMatrix(2, 1), trivial), input_error);
}

TEST_CASE("nabla_free matches scalar-level expansion on random input") {
    selftest::Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        size_t k = static_cast<size_t>(rng.range(1, 3));
        NCMatrix B(k, k), v(k, 1);
        for (size_t i = 0; i < k; ++i) {
            v.at(i, 0) = selftest::random_nc(rng, 2);
            for (size_t j = 0; j < k; ++j)
                if (rng.chance(60)) B.at(i, j) = selftest::random_nc(rng, 2);
        }
        FreeConnection conn(B);
        NCMatrix got = nabla_free(v, conn);
        for (size_t i = 0; i < k; ++i) {
            NCElement expect = delta_tau(v.at(i, 0));
            for (size_t j = 0; j < k; ++j) expect += nc_mul(B.at(i, j), v.at(j, 0));
            REQUIRE(got.at(i, 0) == expect);
        }
    }
}

TEST_CASE("lifting examples") {
    // F = (1 0), S = (1;0), B2 = (c z): B1 = [[cz, 0], [0, 0]]
    NCMatrix F(1, 2), S(2, 1), B2(1, 1);
    F.at(0, 0) = NCElement(1);
    S.at(0, 0) = NCElement(1);
    NCElement cz(SymbolicScalar::c() * SymbolicScalar::z());
    B2.at(0, 0) = cz;
    NCMatrix B1 = lift_connection(F, S, B2);
    CHECK(B1.at(0, 0) == cz);
    CHECK(B1.at(0, 1).is_zero());
    CHECK(B1.at(1, 0).is_zero());
    CHECK(B1.at(1, 1).is_zero());

    // identity surjection returns B2
    NCMatrix I = NCMatrix::identity(1);
    CHECK(lift_connection(I, I, B2) == B2);

    // F = (U1 1), S = (0;1), B2 = 0: B1 = S delta(F) has c tau U1 at (1,0)
    NCMatrix F2(1, 2), S2(2, 1), Z(1, 1);
    F2.at(0, 0) = NCElement::u1();
    F2.at(0, 1) = NCElement(1);
    S2.at(1, 0) = NCElement(1);
    NCMatrix B1b = lift_connection(F2, S2, Z);
    CHECK(B1b.at(1, 0) ==
          NCElement::monomial(1, 0, SymbolicScalar::c() * SymbolicScalar::tau()));
    CHECK(B1b.at(0, 0).is_zero());
    CHECK(F2 * B1b == delta_tau(F2));
}

TEST_CASE("lifting rejects bad sections and dimensions") {
    NCMatrix F(1, 2), S(2, 1), B2(1, 1);
    F.at(0, 0) = NCElement::u1();  // F*S = U1 != 1
    S.at(0, 0) = NCElement(1);
    CHECK_THROWS_AS(lift_connection(F, S, B2), input_error);
    CHECK_THROWS_AS(lift_connection(F, NCMatrix(3, 1), B2), input_error);
    CHECK_THROWS_AS(lift_connection(F, S, NCMatrix(2, 2)), input_error);
}

TEST_CASE("intertwining identity on random data") {
    // The identity F B1 = delta(F) + B2 F also intertwines the connections on
    // random columns: F(delta(v) + B1 v) = delta(F v) + B2 (F v).
    selftest::Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        size_t q = static_cast<size_t>(rng.range(1, 2));
        size_t p = q + static_cast<size_t>(rng.range(0, 1));
        NCMatrix F(q, p), S(p, q), B2(q, q);
        for (size_t i = 0; i < q; ++i) {
            F.at(i, i) = NCElement(1);
            S.at(i, i) = NCElement(1);
            for (size_t j = q; j < p; ++j) F.at(i, j) = selftest::random_nc(rng, 2);
            for (size_t j = 0; j < q; ++j)
                if (rng.chance(50)) B2.at(i, j) = selftest::random_nc(rng, 2);
        }
        NCMatrix B1 = lift_connection(F, S, B2);
        REQUIRE(F * B1 == delta_tau(F) + B2 * F);

        NCMatrix v(p, 1);
        for (size_t i = 0; i < p; ++i) v.at(i, 0) = selftest::random_nc(rng, 2);
        NCMatrix lhs = F * (delta_tau(v) + B1 * v);
        NCMatrix fv = F * v;
        NCMatrix rhs = delta_tau(fv) + B2 * fv;
        REQUIRE(lhs == rhs);
    }
}
