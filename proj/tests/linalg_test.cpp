#include <catch2/catch_amalgamated.hpp>

#include "ncw/linalg.hpp"
#include "ncw/rational.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;

namespace {

using F = GaussianRational;

SparseVec<F> col(std::initializer_list<std::pair<int64_t, long long>> entries) {
    SparseVec<F> v;
    for (auto& [i, c] : entries)
        if (c != 0) v.emplace_back(i, F(c));
    return v;
}

}  // namespace

TEST_CASE("echelon rank on known matrices") {
    Echelon<F> e;
    CHECK(e.insert(col({{0, 1}, {1, 2}})));
    CHECK(e.insert(col({{0, 2}, {2, 1}})));
    CHECK_FALSE(e.insert(col({{0, 3}, {1, 2}, {2, 1}})));  // sum of the first two
    CHECK(e.rank() == 2);
    CHECK(e.reduce(col({{0, 3}, {1, 2}, {2, 1}})).empty());
    CHECK_FALSE(e.reduce(col({{3, 1}})).empty());
}

TEST_CASE("streaming echelon agrees with dense rank on random matrices") {
    selftest::Rng rng(51);
    for (int t = 0; t < 50; ++t) {
        size_t rows = static_cast<size_t>(rng.range(1, 8));
        size_t cols = static_cast<size_t>(rng.range(1, 8));
        std::vector<std::vector<F>> dense(rows, std::vector<F>(cols, F(0)));
        Echelon<F> ech;
        for (size_t c = 0; c < cols; ++c) {
            SparseVec<F> v;
            for (size_t r = 0; r < rows; ++r) {
                long long x = rng.range(-2, 2);
                if (x != 0) {
                    dense[r][c] = F(x);
                    v.emplace_back(static_cast<int64_t>(r), F(x));
                }
            }
            if (!v.empty()) ech.insert(std::move(v));
        }
        REQUIRE(ech.rank() == dense_rank(dense));
    }
}

TEST_CASE("checked rational arithmetic") {
    CheckedRational a(1, 2), b(1, 3);
    CHECK(a + b == CheckedRational(5, 6));
    CHECK(a * b == CheckedRational(1, 6));
    CHECK(a / b == CheckedRational(3, 2));
    CHECK(-(a - b) == CheckedRational(-1, 6));
    CHECK_THROWS_AS(a / CheckedRational(0), input_error);
    CheckedRational huge(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(huge * CheckedRational(4), fast_field_overflow);
}

TEST_CASE("recording echelon extracts kernels") {
    // columns: c0 = e0, c1 = e0 + e1, c2 = e1 (dependent: c2 = c1 - c0)
    RecordingEchelon<F> rec;
    CHECK(rec.insert(0, col({{0, 1}})).empty());
    CHECK(rec.insert(1, col({{0, 1}, {1, 1}})).empty());
    SparseVec<F> ker = rec.insert(2, col({{1, 1}}));
    REQUIRE(!ker.empty());
    // verify: combo applied to the original columns gives zero
    std::unordered_map<int64_t, F> acc;
    std::vector<SparseVec<F>> cols{col({{0, 1}}), col({{0, 1}, {1, 1}}), col({{1, 1}})};
    for (const auto& [j, c] : ker) sv_accumulate(acc, c, cols[static_cast<size_t>(j)]);
    CHECK(sv_from_accumulator(acc).empty());
}

TEST_CASE("quotient basis coordinates") {
    QuotientBasis<F> q;
    q.add_image_column(col({{0, 1}, {1, 1}}));  // image spanned by e0 + e1
    q.offer_cycle(col({{0, 1}}));               // class of e0 generates the quotient
    q.offer_cycle(col({{1, 1}}));               // e1 = (e0+e1) - e0: dependent
    CHECK(q.dimension() == 1);
    // the stored representative is the normalized residual e1 = -e0 mod image
    auto c1 = q.coordinates(col({{1, 3}}));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0] == F(3));
    auto c0 = q.coordinates(col({{0, 3}}));
    CHECK(c0[0] == F(-3));
    CHECK_THROWS_AS(q.coordinates(col({{2, 1}})), contract_error);
}
