#include <catch2/catch_amalgamated.hpp>

#include "ncw/nctorus.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;

namespace {

// Normal-ordering oracle: multiply two monomials as a word of +-1 powers of
// U1 and U2 and bubble the word into normal order one adjacent swap at a
// time, each U2 U1 -> U1 U2 swap contributing one factor of L^-1.
NCElement slow_monomial_product(int64_t a, int64_t b, int64_t c, int64_t d) {
    std::vector<int> word;  // 1 = U1, 2 = U2, -1 = U1^-1, -2 = U2^-1
    auto push = [&](int sym, int64_t count) {
        for (int64_t i = 0; i < (count > 0 ? count : -count); ++i)
            word.push_back(count > 0 ? sym : -sym);
    };
    push(1, a);
    push(2, b);
    push(1, c);
    push(2, d);
    int64_t twist = 0;
    // bubble sort: all U1-letters before all U2-letters
    bool changed = true;
    auto is_u2 = [](int s) { return s == 2 || s == -2; };
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < word.size(); ++i) {
            if (is_u2(word[i]) && !is_u2(word[i + 1])) {
                // U2^e U1^f = L^{-e f} U1^f U2^e for e, f in {+-1}
                int e = word[i] > 0 ? 1 : -1;
                int f = word[i + 1] > 0 ? 1 : -1;
                twist += -e * f;
                std::swap(word[i], word[i + 1]);
                changed = true;
            }
        }
    }
    return NCElement::monomial(a + c, b + d, SymbolicScalar::lambda(static_cast<int32_t>(twist)));
}

}  // namespace

TEST_CASE("defining relation") {
    // U2 U1 = L^-1 U1 U2
    NCElement lhs = nc_mul(NCElement::u2(), NCElement::u1());
    NCElement rhs = NCElement::monomial(1, 1, SymbolicScalar::lambda(-1));
    CHECK(lhs == rhs);
    CHECK(to_string(lhs) == "L^-1 * U1*U2");
}

TEST_CASE("normal ordering matches the single-swap oracle") {
    // worked example: (U1^2 U2)(U1 U2^3) = L^-1 U1^3 U2^4
    NCElement got = nc_mul(NCElement::monomial(2, 1), NCElement::monomial(1, 3));
    CHECK(got == NCElement::monomial(3, 4, SymbolicScalar::lambda(-1)));

    selftest::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        int64_t a = rng.range(-3, 3), b = rng.range(-3, 3);
        int64_t c = rng.range(-3, 3), d = rng.range(-3, 3);
        NCElement fast = nc_mul(NCElement::monomial(a, b), NCElement::monomial(c, d));
        REQUIRE(fast == slow_monomial_product(a, b, c, d));
    }
}

TEST_CASE("unit law on random elements") {
    selftest::Rng rng(5);
    NCElement one(1);
    for (int t = 0; t < 50; ++t) {
        NCElement a = selftest::random_nc(rng, 4);
        REQUIRE(nc_mul(one, a) == a);
        REQUIRE(nc_mul(a, one) == a);
    }
}

TEST_CASE("associativity on random triples") {
    selftest::Rng rng(6);
    for (int t = 0; t < 500; ++t) {
        NCElement a = selftest::random_nc(rng, 4);
        NCElement b = selftest::random_nc(rng, 4);
        NCElement c = selftest::random_nc(rng, 4);
        REQUIRE(nc_mul(nc_mul(a, b), c) == nc_mul(a, nc_mul(b, c)));
    }
}

TEST_CASE("derivation on generators and monomials") {
    CHECK(delta_tau(NCElement::u1()) ==
          NCElement::monomial(1, 0, SymbolicScalar::c() * SymbolicScalar::tau()));
    CHECK(delta_tau(NCElement(1)).is_zero());
    // delta(U1 U2) = c(tau + 1) U1 U2, by Leibniz from the generators
    NCElement u1u2 = nc_mul(NCElement::u1(), NCElement::u2());
    SymbolicScalar coeff = SymbolicScalar::c() * (SymbolicScalar::tau() + SymbolicScalar(1));
    CHECK(delta_tau(u1u2) == u1u2.scaled(coeff));
}

TEST_CASE("derivation law and trace property") {
    selftest::Rng rng(8);
    for (int t = 0; t < 500; ++t) {
        NCElement a = selftest::random_nc(rng, 5);
        NCElement b = selftest::random_nc(rng, 5);
        REQUIRE(derivation_check(a, b).is_zero());
        REQUIRE(nc_trace(nc_mul(a, b)) == nc_trace(nc_mul(b, a)));
    }
    CHECK(derivation_check(NCElement(1), selftest::random_nc(rng, 4)).is_zero());
}

TEST_CASE("trace picks the origin coefficient") {
    CHECK(nc_trace(NCElement(1)) == SymbolicScalar(1));
    CHECK(nc_trace(NCElement::u1()).is_zero());
    // trace(U1 U2 * U2^-1 U1^-1) is the lambda power produced by normal ordering
    NCElement ab = nc_mul(NCElement::monomial(1, 1), NCElement::monomial(-1, -1,
                          SymbolicScalar::lambda(-1)));
    CHECK(nc_trace(ab) == nc_trace(nc_mul(NCElement::monomial(-1, -1, SymbolicScalar::lambda(-1)),
                                          NCElement::monomial(1, 1))));
}

TEST_CASE("numeric coefficientwise consistency") {
    selftest::Rng rng(9);
    auto vals = selftest::numeric_assignment();
    for (int t = 0; t < 100; ++t) {
        NCElement a = selftest::random_nc(rng, 3);
        NCElement b = selftest::random_nc(rng, 3);
        auto prod = evaluate_coeffs(nc_mul(a, b), vals);
        // recompute the product coefficients numerically from a and b
        std::map<std::pair<int64_t, int64_t>, std::complex<double>> expect;
        for (const auto& [ka, ca] : a.coeffs())
            for (const auto& [kb, cb] : b.coeffs()) {
                auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
                std::complex<double> tw = int_pow(vals.at(Unit::Lambda),
                                                  static_cast<int32_t>(-ka.second * kb.first));
                expect[key] += ca.evaluate(vals) * cb.evaluate(vals) * tw;
            }
        for (const auto& [k, v] : expect) {
            auto it = prod.find(k);
            std::complex<double> got = (it == prod.end()) ? 0.0 : it->second;
            REQUIRE(std::abs(got - v) <= 1e-9 * (1.0 + std::abs(v)));
        }
    }
}

TEST_CASE("element parser") {
    NCElement e = parse_nc("U1^2*U2^-1 + (1/2)*U2");
    CHECK(e.coefficient(2, -1) == SymbolicScalar(1));
    CHECK(e.coefficient(0, 1) == SymbolicScalar(GaussianRational(make_rational(1, 2))));
    // multiplication in the written order
    CHECK(parse_nc("U2*U1") == NCElement::monomial(1, 1, SymbolicScalar::lambda(-1)));
    // inverses of monomials are exact
    CHECK(parse_nc("U1*U2/(U1*U2)") == NCElement(1));
    CHECK_THROWS_AS(parse_nc("(U1 + U2)^-1"), input_error);
    CHECK_THROWS_AS(parse_nc("U3"), input_error);

    selftest::Rng rng(10);
    for (int t = 0; t < 100; ++t) {
        NCElement a = selftest::random_nc(rng, 4);
        REQUIRE(parse_nc(to_string(a)) == a);
    }
}
