#include <doctest.h>

#include <cstdint>
#include <functional>
#include <vector>

#include "oss/combinadics.hpp"
#include "oss/errors.hpp"

using oss::BigInt;

namespace {

// Independent lexicographic enumeration of all sorted k-subsets of {0..m-1}.
std::vector<std::vector<int>> enumerate_subsets(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = next; v < m; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

TEST_CASE("binomial matches small known values") {
    CHECK(oss::binomial(0, 0) == 1);
    CHECK(oss::binomial(1, 0) == 1);
    CHECK(oss::binomial(1, 1) == 1);
    CHECK(oss::binomial(5, 2) == 10);
    CHECK(oss::binomial(48, 2) == 1128);
    CHECK(oss::binomial(46, 2) == 1035);
    CHECK(oss::binomial(52, 5) == 2598960);
    CHECK(oss::binomial(3, 7) == 0);
}

TEST_CASE("binomial matches the factorial identity for m <= 20") {
    for (int m = 0; m <= 20; ++m)
        for (int k = 0; k <= m; ++k)
            CHECK(oss::binomial(m, k) * factorial(k) * factorial(m - k) == factorial(m));
}

TEST_CASE("binomial row sums equal powers of two up to m = 200") {
    for (int m : {1, 17, 64, 200}) {
        BigInt sum = 0;
        for (int k = 0; k <= m; ++k) sum += oss::binomial(m, k);
        const BigInt want = BigInt(1) << m;
        CHECK(sum == want);
    }
}

TEST_CASE("binomial central value at m = 100 matches the published constant") {
    CHECK(oss::binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("binomial satisfies the Pascal recurrence at large arguments") {
    for (int m : {100, 257, 512})
        for (int k : {1, 2, 7, m / 2})
            CHECK(oss::binomial(m, k) == oss::binomial(m - 1, k - 1) + oss::binomial(m - 1, k));
}

TEST_CASE("floor_log2_binomial brackets the exact value") {
    for (int m : {2, 16, 48, 46, 129, 512}) {
        for (int k : {1, 2, m / 4}) {
            if (k < 1) continue;
            const int f = oss::floor_log2_binomial(m, k);
            const BigInt c = oss::binomial(m, k);
            const BigInt lo = BigInt(1) << f;
            const BigInt hi = BigInt(1) << (f + 1);
            CHECK(lo <= c);
            CHECK(c < hi);
        }
    }
    CHECK(oss::floor_log2_binomial(48, 2) == 10);
    CHECK(oss::floor_log2_binomial(46, 2) == 10);
    CHECK_THROWS_AS(oss::floor_log2_binomial(3, 7), oss::Error);
}

TEST_CASE("BinomialTable agrees with binomial() over its whole range") {
    oss::BinomialTable table(64, 8);
    for (int i = 0; i <= 64; ++i)
        for (int j = 0; j <= 8; ++j)
            CHECK(table.at(i, j) == oss::binomial(i, j));
}

TEST_CASE("unrank enumerates subsets in lexicographic order") {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {8, 3}, {10, 4}, {6, 6}, {7, 1}}) {
        const auto expected = enumerate_subsets(m, k);
        REQUIRE(BigInt(expected.size()) == oss::binomial(m, k));
        for (std::size_t r = 0; r < expected.size(); ++r) {
            CHECK(oss::combination_unrank(BigInt(r), m, k) == expected[r]);
            CHECK(oss::combination_rank(expected[r], m, k) == BigInt(r));
        }
    }
}

TEST_CASE("unrank endpoints") {
    CHECK(oss::combination_unrank(0, 48, 2) == std::vector<int>{0, 1});
    CHECK(oss::combination_unrank(oss::binomial(48, 2) - 1, 48, 2) == std::vector<int>{46, 47});
    CHECK(oss::combination_unrank(5, 4, 2) == std::vector<int>{2, 3});
}

TEST_CASE("rank and unrank invert each other at large m") {
    oss::BinomialTable table(512, 3);
    for (const BigInt& rank : {BigInt(0), BigInt(12345), oss::binomial(512, 3) - 1, oss::binomial(512, 3) / 2}) {
        const auto subset = oss::combination_unrank(rank, 512, 3, table);
        CHECK(oss::combination_rank(subset, 512, 3, table) == rank);
    }
}

TEST_CASE("table-backed and plain variants agree") {
    oss::BinomialTable table(48, 2);
    for (int r : {0, 1, 500, 1127}) {
        CHECK(oss::combination_unrank(BigInt(r), 48, 2, table) == oss::combination_unrank(BigInt(r), 48, 2));
        CHECK(oss::combination_unrank(BigInt(r % 1035), 46, 2, table) ==
              oss::combination_unrank(BigInt(r % 1035), 46, 2));
    }
}

TEST_CASE("rank range and subset validation errors") {
    CHECK_THROWS_AS(oss::combination_unrank(oss::binomial(48, 2), 48, 2), oss::Error);
    CHECK_THROWS_AS(oss::combination_unrank(BigInt(-1), 48, 2), oss::Error);
    CHECK_THROWS_AS(oss::combination_rank({1, 1}, 4, 2), oss::Error);
    CHECK_THROWS_AS(oss::combination_rank({3, 1}, 4, 2), oss::Error);
    CHECK_THROWS_AS(oss::combination_rank({0, 4}, 4, 2), oss::Error);
    CHECK_THROWS_AS(oss::combination_rank({0}, 4, 2), oss::Error);
    try {
        oss::combination_unrank(oss::binomial(48, 2), 48, 2);
        FAIL("expected an error");
    } catch (const oss::Error& e) {
        CHECK(e.code() == oss::ErrorCode::RankOutOfRange);
    }
}
