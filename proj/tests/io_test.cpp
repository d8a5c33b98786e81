#include <catch2/catch_amalgamated.hpp>

#include "ncw/io.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;
using nlohmann::json;

TEST_CASE("algebra files load and validate") {
    json j = json::parse(R"({
        "basis": ["1", "x"],
        "unit": ["1", 0],
        "mult": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"]]
    })");
    AlgebraPresentation a = io::load_algebra(j);
    CHECK(a.dim() == 2);
    CHECK(a.is_unital());
    CHECK(a.basis_product(1, 1).empty());

    // broken associativity is rejected with a diagnostic
    json bad = json::parse(R"({
        "basis": ["a", "b"],
        "unit": null,
        "mult": [[0,0,1,"1"], [1,1,0,"1"]]
    })");
    try {
        io::load_algebra(bad);
        FAIL("expected a validation error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("associativity") != std::string::npos);
    }

    json outOfRange = json::parse(R"({"basis": ["1"], "mult": [[0,0,3,"1"]]})");
    CHECK_THROWS_AS(io::load_algebra(outOfRange), input_error);
}

TEST_CASE("algebra presets resolve") {
    CHECK(io::load_algebra_arg("preset:m2").dim() == 4);
    CHECK(io::load_algebra_arg("preset:a2path").dim() == 3);
    CHECK_THROWS_AS(io::load_algebra_arg("preset:nonsense"), input_error);
}

TEST_CASE("dg category files load and validate") {
    json j = json::parse(R"({
        "objects": ["*"],
        "homs": [{"from": 0, "to": 0,
                  "basis": [{"name": "id", "deg": 0}, {"name": "u", "deg": 1}]}],
        "differential": [],
        "composition": [{"x": 0, "y": 0, "z": 0,
                         "entries": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"]]}],
        "identities": [[[0, "1"]]]
    })");
    DgCategoryPresentation c = io::load_dg_category(j);
    CHECK(c.objects() == 1);
    CHECK(c.hom(0, 0).dim() == 2);
    CHECK_FALSE(c.ungraded());

    // Leibniz-violating differential is rejected
    json bad = j;
    bad["differential"] = json::parse(R"([{"from":0,"to":0,"entries":[[0,1,"1"]]}])");
    CHECK_THROWS_AS(io::load_dg_category(bad), input_error);
}

TEST_CASE("torus element and matrix round-trips") {
    selftest::Rng rng(61);
    for (int t = 0; t < 50; ++t) {
        NCElement e = selftest::random_nc(rng, 4);
        io::ordered_json rec = io::nc_element_records(e);
        NCElement back = io::load_nc_element(json::parse(rec.dump()));
        REQUIRE(back == e);
    }
    NCMatrix m(2, 2);
    m.at(0, 0) = parse_nc("U1");
    m.at(1, 1) = parse_nc("L^-1*U2 + 3");
    io::ordered_json mj = io::nc_matrix_to_json(m);
    NCMatrix back = io::load_nc_matrix(json::parse(mj.dump()));
    CHECK(back == m);
    CHECK_THROWS_AS(io::load_nc_matrix(json::parse(R"({"rows":2,"cols":2,"entries":["U1"]})")),
                    input_error);
}

TEST_CASE("section round-trips") {
    selftest::Rng rng(62);
    for (const auto& ch : std::vector<HeisenbergCharge>{{1, 1}, {1, 2}, {2, -1}}) {
        GaussJet f = selftest::random_section(rng, ch);
        io::ordered_json j = io::section_to_json(ch, f);
        auto [ch2, f2] = io::load_section(json::parse(j.dump()));
        REQUIRE(ch2.n == ch.n);
        REQUIRE(ch2.m == ch.m);
        REQUIRE(f2 == f);
    }
    CHECK_THROWS_AS(io::load_section(json::parse(
                        R"({"charge": {"n": 1, "m": 2}, "classes": [{"alpha": 5, "terms": []}]})")),
                    input_error);
}

TEST_CASE("formal object round-trips") {
    selftest::Rng rng(63);
    for (int t = 0; t < 50; ++t) {
        FormalObject x = selftest::random_object(rng);
        io::ordered_json j = io::formal_object_to_json(x);
        REQUIRE(io::load_formal_object(json::parse(j.dump())) == x);
    }
    CHECK_THROWS_AS(
        io::load_formal_object(json::parse(R"({"summands": [{"k":0,"r":2,"d":4}]})")),
        input_error);
}

TEST_CASE("missing fields carry context") {
    try {
        io::load_formal_object(json::parse(R"({"stuff": []})"), "obj.json");
        FAIL("expected error");
    } catch (const input_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("obj.json") != std::string::npos);
        CHECK(msg.find("summands") != std::string::npos);
    }
    CHECK_THROWS_AS(io::load_json_file("/nonexistent/path.json"), input_error);
}
