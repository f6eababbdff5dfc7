#include <doctest.h>

#include <cmath>
#include <vector>

#include "oss/channel.hpp"
#include "oss/code_spec.hpp"
#include "oss/errors.hpp"

namespace {

oss::ValidatedSpec two_layer_48() {
    oss::CodeSpec raw;
    raw.n = 48;
    raw.layers = {{2, {-1.0, 1.0}, std::nullopt}, {2, {-2.0, 2.0}, std::nullopt}};
    return oss::validate_spec(raw);
}

} // namespace

TEST_CASE("word_at matches an independent reimplementation of the mixer") {
    CHECK(oss::RngStream(0, 0).word_at(0) == 0x4f13727f5d1f2132ULL);
    CHECK(oss::RngStream(0, 0).word_at(1) == 0x63e3456b40e07a9aULL);
    CHECK(oss::RngStream(1, 0).word_at(0) == 0x4a04f68f8d9e21ebULL);
    CHECK(oss::RngStream(0, 1).word_at(0) == 0xfe3ae29e7a1951bcULL);
    CHECK(oss::RngStream(0xdeadbeefULL, 0x123456789abcULL).word_at(42) == 0x4dcdd8772215d184ULL);
}

TEST_CASE("sequential cursor walks the counter") {
    oss::RngStream s(7, 9);
    const oss::RngStream fixed(7, 9);
    for (std::uint64_t i = 0; i < 20; ++i) CHECK(s.next_u64() == fixed.word_at(i));
}

TEST_CASE("identical streams replay identically, distinct streams differ") {
    oss::RngStream a(42, 5), b(42, 5), c(42, 6), d(43, 5);
    int diff_c = 0, diff_d = 0;
    for (int i = 0; i < 100; ++i) {
        const double g = a.next_gaussian();
        CHECK(g == b.next_gaussian());
        diff_c += (a.word_at(i) != c.word_at(i));
        diff_d += (a.word_at(i) != d.word_at(i));
    }
    CHECK(diff_c == 100);
    CHECK(diff_d == 100);
}

TEST_CASE("unit uniforms respect their half-open ranges") {
    oss::RngStream s(1, 2);
    for (int i = 0; i < 10000; ++i) {
        const double open = s.next_unit_open();
        CHECK(open > 0.0);
        CHECK(open <= 1.0);
    }
    oss::RngStream t(1, 3);
    for (int i = 0; i < 10000; ++i) {
        const double co = t.next_unit_coopen();
        CHECK(co >= 0.0);
        CHECK(co < 1.0);
    }
}

TEST_CASE("gaussian moments land within Monte Carlo bands") {
    const int n = 1000000;
    oss::RngStream s(2024, 0);
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
    double prev = 0.0, lag1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = s.next_gaussian();
        sum += g;
        sum2 += g * g;
        sum3 += g * g * g;
        sum4 += g * g * g * g;
        if (i > 0) lag1 += g * prev;
        prev = g;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double invsq = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean) < 4.0 * invsq);
    CHECK(std::abs(var - 1.0) < 0.01);
    CHECK(std::abs(sum3 / n) < 4.0 * std::sqrt(15.0) * invsq); // skew term, Var(g^3) = 15
    CHECK(std::abs(sum4 / n - 3.0) < 0.05);
    CHECK(std::abs(lag1 / (n - 1)) < 4.0 * invsq);
}

TEST_CASE("streams with different ids are empirically uncorrelated") {
    const int n = 200000;
    oss::RngStream a(99, 0), b(99, 1);
    double cross = 0.0;
    for (int i = 0; i < n; ++i) cross += a.next_gaussian() * b.next_gaussian();
    CHECK(std::abs(cross / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("transmit adds noise at the requested level") {
    const std::vector<double> codeword(4096, 1.5);
    oss::RngStream s(5, 5);
    const auto y = oss::transmit(codeword, {0.25}, s);
    REQUIRE(y.size() == codeword.size());
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - codeword[i];
        sum += d;
        sum2 += d * d;
    }
    const double mean = sum / static_cast<double>(y.size());
    const double var = sum2 / static_cast<double>(y.size()) - mean * mean;
    CHECK(std::abs(mean) < 4.0 * 0.25 / std::sqrt(4096.0));
    CHECK(var == doctest::Approx(0.0625).epsilon(0.10));

    oss::RngStream t(5, 5);
    CHECK_THROWS_AS(oss::transmit(codeword, {0.0}, t), oss::Error);
    CHECK_THROWS_AS(oss::transmit(codeword, {-1.0}, t), oss::Error);
}

TEST_CASE("noise level for the reference spec at 0 dB is sqrt(5/24)") {
    const auto spec = two_layer_48();
    const double sigma = oss::sigma_from_ebn0_db(spec, 0.0);
    CHECK(sigma * sigma == doctest::Approx(5.0 / 24.0).epsilon(1e-15));
    // At 0 dB Eb/N0 the SNR is 2R = 1, i.e. 0 dB.
    CHECK(oss::snr_db_from_ebn0_db(spec, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(oss::snr_db_from_sigma(spec, sigma) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sigma and Eb/N0 conversions invert each other") {
    const auto spec = two_layer_48();
    for (double db : {-3.0, 0.0, 2.5, 8.0}) {
        const double sigma = oss::sigma_from_ebn0_db(spec, db);
        CHECK(oss::ebn0_db_from_sigma(spec, sigma) == doctest::Approx(db).epsilon(1e-12));
    }
    CHECK_THROWS_AS(oss::ebn0_db_from_sigma(spec, 0.0), oss::Error);
}

TEST_CASE("random_bits is deterministic and unbiased") {
    oss::RngStream a(77, 0), b(77, 0);
    const oss::Bits x = oss::random_bits(24, a);
    CHECK(x == oss::random_bits(24, b));
    REQUIRE(x.size() == 24);

    oss::RngStream s(78, 0);
    const int n = 100000;
    const oss::Bits big = oss::random_bits(n, s);
    int ones = 0;
    for (auto bit : big) {
        CHECK(bit <= 1);
        ones += bit;
    }
    CHECK(std::abs(ones - n / 2) < 2.0 * std::sqrt(n / 4.0) * 4.0);
}
