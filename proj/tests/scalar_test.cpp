#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ncw/scalar_parse.hpp"
#include "ncw/selftest.hpp"
#include "ncw/surd.hpp"
#include "ncw/symbolic.hpp"

using namespace ncw;

TEST_CASE("unit relation and basic arithmetic") {
    CHECK(SymbolicScalar::lambda(1) * SymbolicScalar::lambda(-1) == SymbolicScalar(1));
    CHECK((SymbolicScalar::theta() + SymbolicScalar::tau()) - SymbolicScalar::theta() ==
          SymbolicScalar::tau());

    // 1/(n + theta m) for (n, m) = (1, 1)
    SymbolicScalar dim = SymbolicScalar(1) + SymbolicScalar::theta();
    SymbolicScalar inv = dim.inverse();
    CHECK(inv * dim == SymbolicScalar(1));
    CHECK_THROWS_AS(SymbolicScalar(0).inverse(), input_error);
}

TEST_CASE("field axioms on random scalars") {
    selftest::Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        SymbolicScalar a = selftest::random_scalar(rng);
        SymbolicScalar b = selftest::random_scalar(rng);
        SymbolicScalar c = selftest::random_scalar(rng);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + (-a) == SymbolicScalar(0));
        if (!a.is_zero()) REQUIRE(a * a.inverse() == SymbolicScalar(1));
    }
}

TEST_CASE("evaluate couples lambda with theta") {
    const double pi = 3.14159265358979323846;
    std::map<Unit, std::complex<double>> vals;
    vals[Unit::Theta] = 0.25;
    vals[Unit::Lambda] = std::exp(std::complex<double>(0, 2 * pi * 0.25));
    vals[Unit::C] = std::complex<double>(0, 2 * pi);
    vals[Unit::Tau] = std::complex<double>(0, 1);
    vals[Unit::Z] = std::complex<double>(0.5, 0);

    auto lam = SymbolicScalar::lambda(1).evaluate(vals);
    CHECK(std::abs(lam - std::complex<double>(0, 1)) < 1e-12);
    CHECK(std::abs(SymbolicScalar(1).evaluate(vals) - 1.0) < 1e-15);
    // c * tau at tau = i gives -2 pi
    auto ct = (SymbolicScalar::c() * SymbolicScalar::tau()).evaluate(vals);
    CHECK(std::abs(ct - std::complex<double>(-2 * pi, 0)) < 1e-12);
}

TEST_CASE("evaluate reports unbound units") {
    std::map<Unit, std::complex<double>> vals;
    vals[Unit::Theta] = 0.3;
    SymbolicScalar s = SymbolicScalar::tau() * SymbolicScalar::theta();
    try {
        s.evaluate(vals);
        FAIL("expected an error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("tau") != std::string::npos);
    }
}

TEST_CASE("evaluate is a ring homomorphism on random scalars") {
    selftest::Rng rng(11);
    auto vals = selftest::numeric_assignment();
    for (int t = 0; t < 300; ++t) {
        SymbolicScalar a = selftest::random_scalar(rng);
        SymbolicScalar b = selftest::random_scalar(rng);
        auto va = a.evaluate(vals), vb = b.evaluate(vals);
        auto vab = (a * b).evaluate(vals);
        REQUIRE(std::abs(vab - va * vb) <= 1e-9 * (1.0 + std::abs(va * vb)));
        auto vsum = (a + b).evaluate(vals);
        REQUIRE(std::abs(vsum - (va + vb)) <= 1e-9 * (1.0 + std::abs(va + vb)));
    }
}

TEST_CASE("surd comparison examples") {
    CHECK(surd_compare(QuadraticSurd(0, 1, 2, 1), make_rational(3, 2)) == Ordering::Less);
    CHECK(surd_compare(QuadraticSurd(1, 0, 2, 1), make_rational(1, 1)) == Ordering::Equal);
    // (sqrt(5) - 1)/2 > 1/2 since 5 > 4
    CHECK(surd_compare(QuadraticSurd(-1, 1, 5, 2), make_rational(1, 2)) == Ordering::Greater);
}

TEST_CASE("surd validation") {
    CHECK_THROWS_AS(QuadraticSurd(0, 1, 12, 1), input_error);  // 12 = 4*3 not squarefree
    CHECK_THROWS_AS(QuadraticSurd(0, 1, 2, 0), input_error);
    CHECK(QuadraticSurd(3, 0, 2, 2).is_rational());
    CHECK(QuadraticSurd(3, 1, 2, 2).is_irrational());
}

TEST_CASE("surd comparison agrees with 50-digit evaluation") {
    using big = boost::multiprecision::cpp_bin_float_50;
    selftest::Rng rng(13);
    std::vector<int64_t> ds{2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23};
    for (int t = 0; t < 1000; ++t) {
        int64_t p = rng.range(-50, 50), q = rng.range(-50, 50);
        int64_t d = ds[static_cast<size_t>(rng.range(0, static_cast<int64_t>(ds.size()) - 1))];
        int64_t r = rng.range(1, 20);
        QuadraticSurd s(p, q, d, r);
        int64_t ya = rng.range(-60, 60), yb = rng.range(1, 30);
        Rational y = make_rational(ya, yb);
        big lhs = (big(p) + big(q) * sqrt(big(d))) / big(r) - big(ya) / big(yb);
        Ordering got = surd_compare(s, y);
        if (lhs > 1e-30)
            REQUIRE(got == Ordering::Greater);
        else if (lhs < -1e-30)
            REQUIRE(got == Ordering::Less);
        else
            REQUIRE(got == Ordering::Equal);
    }
}

TEST_CASE("scalar parser round-trips") {
    auto s = parse_scalar("(3/2 + 1/2i) * L^-2 * th * c");
    CHECK(to_string(s) == "(3/2 + 1/2i)*L^-2*th*c");
    CHECK(parse_scalar(to_string(s)) == s);

    selftest::Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        SymbolicScalar x = selftest::random_scalar(rng);
        REQUIRE(parse_scalar(to_string(x)) == x);
    }
}

TEST_CASE("surd parser round-trips") {
    QuadraticSurd s = parse_surd("(-1+1*sqrt(2))/1");
    CHECK(s.p() == -1);
    CHECK(s.q() == 1);
    CHECK(s.d() == 2);
    CHECK(parse_surd(to_string(s)) == s);
    CHECK(parse_surd("sqrt(2)").compare(make_rational(3, 2)) == Ordering::Less);
    CHECK(parse_surd("3 - 2*sqrt(5)").compare(make_rational(-1, 1)) == Ordering::Less);
    CHECK_THROWS_AS(parse_surd("(1 + sqrt(2)"), input_error);
}

TEST_CASE("lazy normalization cancels full denominators") {
    // (m/(n + theta m)) * ((n + theta m)/m) = 1 exactly, via division
    Polynomial dim{GaussianRational(2)};
    dim += Polynomial::unit_power(Unit::Theta, 1).scaled(GaussianRational(3));
    SymbolicScalar mu(Polynomial{GaussianRational(3)}, dim);
    SymbolicScalar step(dim, Polynomial{GaussianRational(3)});
    SymbolicScalar prod = mu * step;
    CHECK(prod.is_polynomial());
    CHECK(prod == SymbolicScalar(1));
}
