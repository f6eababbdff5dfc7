#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include "oss/code_spec.hpp"
#include "oss/encoder.hpp"
#include "oss/errors.hpp"

namespace {

oss::CodeSpec two_layer_48() {
    oss::CodeSpec spec;
    spec.n = 48;
    spec.layers = {{2, {-1.0, 1.0}, std::nullopt}, {2, {-2.0, 2.0}, std::nullopt}};
    return spec;
}

oss::ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const oss::Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return oss::ErrorCode::InvalidArgument;
}

oss::Bits random_bits(int n, std::mt19937_64& rng) {
    oss::Bits bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
    return bits;
}

} // namespace

TEST_CASE("two-layer N=48 reference spec: budgets, rate, energy") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    CHECK(spec.n() == 48);
    CHECK(spec.num_layers() == 2);

    // Layer 1: C(48,2) = 1128 -> 10 support bits, 2 symbols x 1 amplitude bit.
    CHECK(spec.layer(0).pool_size == 48);
    CHECK(spec.layer(0).support_bits == 10);
    CHECK(spec.layer(0).amplitude_bits_per_symbol == 1);
    CHECK(oss::layer_bit_budget(spec, 0) == 12);

    // Layer 2: C(46,2) = 1035 -> 10 support bits again.
    CHECK(spec.layer(1).pool_size == 46);
    CHECK(spec.layer(1).preceding_sparsity == 2);
    CHECK(oss::layer_bit_budget(spec, 1) == 12);

    CHECK(spec.total_bits() == 24);
    CHECK(spec.total_sparsity() == 4);
    CHECK(oss::code_rate(spec) == 0.5);

    // E_s = (2*1 + 2*4)/48 = 5/24, exact in floating point.
    CHECK(oss::average_symbol_energy(spec) == 5.0 / 24.0);
}

TEST_CASE("explicit pool sizes shrink the support budget") {
    oss::CodeSpec raw = two_layer_48();
    raw.layers[1].pool_size = 40; // C(40,2) = 780 -> 9 support bits
    const oss::ValidatedSpec spec = oss::validate_spec(raw);
    CHECK(spec.layer(1).pool_size == 40);
    CHECK(oss::layer_bit_budget(spec, 1) == 11);
    CHECK(spec.total_bits() == 23);
}

TEST_CASE("validation rejects each malformed spec with the right code") {
    using oss::ErrorCode;
    auto check_code = [](oss::CodeSpec spec, ErrorCode expected) {
        CHECK(code_of([&] { oss::validate_spec(spec); }) == expected);
    };

    oss::CodeSpec spec = two_layer_48();
    spec.layers[1].alphabet = {-1.0, 2.0}; // -1 collides with layer 1
    check_code(spec, ErrorCode::OverlappingAlphabets);

    spec = two_layer_48();
    spec.layers[0].alphabet = {0.0, 1.0};
    check_code(spec, ErrorCode::ZeroInAlphabet);

    spec = two_layer_48();
    spec.layers[0].alphabet = {-1.0, 1.0, 3.0};
    check_code(spec, ErrorCode::NonPowerOfTwoAlphabet);

    spec = two_layer_48();
    spec.layers[0].k = 47; // leaves 1 slot for layer 2's k = 2
    check_code(spec, ErrorCode::SparsityExceedsPool);

    spec = two_layer_48();
    spec.layers[1].pool_size = 1; // below k
    check_code(spec, ErrorCode::SparsityExceedsPool);

    spec = two_layer_48();
    spec.layers[1].pool_size = 47; // exceeds the 46 remaining indices
    check_code(spec, ErrorCode::SparsityExceedsPool);

    spec = two_layer_48();
    spec.n = 0;
    check_code(spec, ErrorCode::InvalidArgument);

    spec = two_layer_48();
    spec.layers.clear();
    check_code(spec, ErrorCode::InvalidArgument);

    // A repeated value inside one alphabet is a malformed input, distinct
    // from the cross-layer disjointness invariant.
    spec = two_layer_48();
    spec.layers[0].alphabet = {1.0, 1.0};
    check_code(spec, ErrorCode::InvalidArgument);

    spec = two_layer_48();
    spec.dictionary = oss::DictionaryKind::Hadamard; // 48 is not a power of two
    check_code(spec, ErrorCode::HadamardOrderInvalid);

    spec = two_layer_48();
    spec.dictionary = oss::DictionaryKind::Explicit;
    spec.dictionary_matrix.assign(48, std::vector<double>(48, 0.0));
    for (int i = 0; i < 48; ++i) spec.dictionary_matrix[i][i] = 1.0;
    spec.dictionary_matrix[0][1] = 0.5; // breaks orthonormality
    check_code(spec, ErrorCode::NonOrthonormalDictionary);
}

TEST_CASE("singleton alphabets carry zero amplitude bits") {
    oss::CodeSpec raw;
    raw.n = 16;
    raw.layers = {{1, {1.0}, std::nullopt}};
    const oss::ValidatedSpec spec = oss::validate_spec(raw);
    CHECK(spec.layer(0).amplitude_bits_per_symbol == 0);
    CHECK(spec.total_bits() == 4); // floor(log2 C(16,1)) = 4
    CHECK(oss::code_rate(spec) == 4.0 / 16.0);
}

TEST_CASE("bits map to placements exactly as the combinadic field layout dictates") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    // Hex 00f00f: layer 1 field 0x00f = rank 3, amplitudes (1,1);
    // layer 2 field 0x00f = rank 3 over the 46 remaining, amplitudes (1,1).
    const oss::Bits bits = oss::hex_to_bits("00f00f", 24);
    const auto placements = oss::bits_to_placements(spec, bits);
    REQUIRE(placements.size() == 2);
    CHECK(placements[0].support == std::vector<int>{0, 4});
    CHECK(placements[0].values == std::vector<double>{1.0, 1.0});
    CHECK(placements[1].support == std::vector<int>{1, 6});
    CHECK(placements[1].values == std::vector<double>{2.0, 2.0});

    const auto inv = oss::placements_to_bits(spec, placements);
    CHECK_FALSE(inv.overflow);
    CHECK(inv.bits == bits);
}

TEST_CASE("all-zero and all-one messages round trip") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    for (int fill : {0, 1}) {
        oss::Bits bits(24, static_cast<std::uint8_t>(fill));
        const auto placements = oss::bits_to_placements(spec, bits);
        const auto inv = oss::placements_to_bits(spec, placements);
        CHECK_FALSE(inv.overflow);
        CHECK(inv.bits == bits);
    }
}

TEST_CASE("bit/placement maps are inverse bijections across spec shapes") {
    std::mt19937_64 rng(7);
    std::vector<oss::CodeSpec> shapes;
    shapes.push_back(two_layer_48());
    {
        oss::CodeSpec s;
        s.n = 16;
        s.layers = {{1, {1.0}, std::nullopt}};
        shapes.push_back(s);
    }
    {
        oss::CodeSpec s;
        s.n = 32;
        s.layers = {{3, {-3.0, -1.0, 1.0, 3.0}, std::nullopt}, {2, {2.0, -2.0}, 20}};
        shapes.push_back(s);
    }
    {
        oss::CodeSpec s;
        s.n = 24;
        s.layers = {{2, {4.0}, std::nullopt}, {1, {-2.0, 2.0}, std::nullopt}, {2, {-1.0, 1.0}, 10}};
        shapes.push_back(s);
    }
    for (const auto& raw : shapes) {
        const oss::ValidatedSpec spec = oss::validate_spec(raw);
        for (int trial = 0; trial < 200; ++trial) {
            const oss::Bits bits = random_bits(spec.total_bits(), rng);
            const auto placements = oss::bits_to_placements(spec, bits);
            // Supports must be sorted, disjoint across layers, and in range.
            std::vector<bool> used(spec.n(), false);
            for (std::size_t l = 0; l < placements.size(); ++l) {
                for (std::size_t i = 0; i < placements[l].support.size(); ++i) {
                    const int idx = placements[l].support[i];
                    REQUIRE(idx >= 0);
                    REQUIRE(idx < spec.n());
                    REQUIRE_FALSE(used[idx]);
                    used[idx] = true;
                    if (i > 0) REQUIRE(placements[l].support[i - 1] < idx);
                }
            }
            const auto inv = oss::placements_to_bits(spec, placements);
            REQUIRE_FALSE(inv.overflow);
            REQUIRE(inv.bits == bits);
        }
    }
}

TEST_CASE("placement vector materializes the sparse superposition") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    const oss::Bits bits = oss::hex_to_bits("00f00f", 24);
    const auto x = oss::placements_to_vector(spec, oss::bits_to_placements(spec, bits));
    REQUIRE(static_cast<int>(x.size()) == 48);
    CHECK(x[0] == 1.0);
    CHECK(x[4] == 1.0);
    CHECK(x[1] == 2.0);
    CHECK(x[6] == 2.0);
    double sum = 0.0;
    for (double v : x) sum += v;
    CHECK(sum == 6.0);
}

TEST_CASE("unreachable ranks clamp and flag on inversion") {
    // Pool 46 holds C(46,2) = 1035 rank values but the field has 2^10 = 1024;
    // supports ranking at 1024+ cannot come from any message.
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    std::vector<oss::LayerPlacement> placements(2);
    placements[0].support = {0, 4};
    placements[0].values = {1.0, 1.0};
    placements[1].support = {46, 47}; // relative rank C(46,2)-1 = 1034 >= 1024
    placements[1].values = {2.0, 2.0};
    const auto inv = oss::placements_to_bits(spec, placements);
    CHECK(inv.overflow);
    // The layer-2 support field clamps to all ones.
    const auto placements2 = oss::bits_to_placements(spec, inv.bits);
    const auto inv2 = oss::placements_to_bits(spec, placements2);
    CHECK_FALSE(inv2.overflow);
    CHECK(inv2.bits == inv.bits);
}

TEST_CASE("placement inversion rejects malformed placements") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    std::vector<oss::LayerPlacement> placements(2);
    placements[0].support = {0, 4};
    placements[0].values = {1.0, 1.0};
    placements[1].support = {0, 6}; // collides with layer 1
    placements[1].values = {2.0, 2.0};
    CHECK(code_of([&] { oss::placements_to_bits(spec, placements); }) == oss::ErrorCode::InvalidSubset);

    placements[1].support = {1, 6};
    placements[1].values = {3.0, 2.0}; // 3 is not in the alphabet
    CHECK(code_of([&] { oss::placements_to_bits(spec, placements); }) == oss::ErrorCode::InvalidArgument);
}

TEST_CASE("bit strings of the wrong length are rejected") {
    const oss::ValidatedSpec spec = oss::validate_spec(two_layer_48());
    CHECK(code_of([&] { oss::bits_to_placements(spec, oss::Bits(23, 0)); }) ==
          oss::ErrorCode::BitLengthMismatch);
}

TEST_CASE("hex codec round trips and validates") {
    const oss::Bits bits = oss::hex_to_bits("a5", 8);
    CHECK(bits == oss::Bits{1, 0, 1, 0, 0, 1, 0, 1});
    CHECK(oss::bits_to_hex(bits) == "a5");

    // 5 bits need 2 hex digits; the low 3 bits of the last nibble must be 0.
    CHECK(oss::hex_to_bits("a8", 5) == oss::Bits{1, 0, 1, 0, 1});
    CHECK(oss::bits_to_hex(oss::Bits{1, 0, 1, 0, 1}) == "a8");
    CHECK_THROWS_AS(oss::hex_to_bits("a9", 5), oss::Error);  // set bit past the length
    CHECK_THROWS_AS(oss::hex_to_bits("a", 8), oss::Error);   // too short
    CHECK_THROWS_AS(oss::hex_to_bits("abc", 8), oss::Error); // too long
    CHECK_THROWS_AS(oss::hex_to_bits("zz", 8), oss::Error);  // not hex

    std::mt19937_64 rng(11);
    for (int nbits : {1, 4, 7, 24, 63}) {
        for (int t = 0; t < 20; ++t) {
            oss::Bits b(nbits);
            for (auto& bit : b) bit = static_cast<std::uint8_t>(rng() & 1);
            CHECK(oss::hex_to_bits(oss::bits_to_hex(b), nbits) == b);
        }
    }
}
