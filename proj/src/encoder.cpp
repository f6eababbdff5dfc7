#include "oss/encoder.hpp"

#include <algorithm>
#include <cctype>

#include "oss/dictionary.hpp"
#include "oss/errors.hpp"

namespace oss {

namespace {

BigInt bits_to_bigint(const Bits& bits, std::size_t from, int count) {
    BigInt value = 0;
    for (int i = 0; i < count; ++i) {
        value <<= 1;
        value |= static_cast<unsigned>(bits[from + i] & 1u);
    }
    return value;
}

void bigint_to_bits(BigInt value, Bits& bits, std::size_t from, int count) {
    for (int i = count - 1; i >= 0; --i) {
        bits[from + i] = static_cast<std::uint8_t>(static_cast<unsigned>(value & 1u));
        value >>= 1;
    }
}

unsigned bits_to_uint(const Bits& bits, std::size_t from, int count) {
    unsigned value = 0;
    for (int i = 0; i < count; ++i) value = (value << 1) | (bits[from + i] & 1u);
    return value;
}

void uint_to_bits(unsigned value, Bits& bits, std::size_t from, int count) {
    for (int i = count - 1; i >= 0; --i) {
        bits[from + i] = static_cast<std::uint8_t>(value & 1u);
        value >>= 1;
    }
}

} // namespace

std::vector<LayerPlacement> bits_to_placements(const ValidatedSpec& spec, const Bits& bits) {
    if (static_cast<int>(bits.size()) != spec.total_bits())
        fail(ErrorCode::BitLengthMismatch, "expected exactly sum of layer bit budgets");

    std::vector<int> available(spec.n());
    for (int i = 0; i < spec.n(); ++i) available[i] = i;

    std::vector<LayerPlacement> placements;
    placements.reserve(spec.layers().size());
    std::size_t cursor = 0;

    for (const LayerInfo& layer : spec.layers()) {
        const BigInt rank = bits_to_bigint(bits, cursor, layer.support_bits);
        cursor += layer.support_bits;

        // rank < 2^support_bits <= C(pool, k) by construction of support_bits.
        std::vector<int> relative = combination_unrank(rank, layer.pool_size, layer.k, *layer.binomials);

        LayerPlacement placement;
        placement.support.reserve(layer.k);
        placement.values.reserve(layer.k);
        for (int pos : relative) placement.support.push_back(available[pos]);

        for (int i = 0; i < layer.k; ++i) {
            const unsigned idx = bits_to_uint(bits, cursor, layer.amplitude_bits_per_symbol);
            cursor += layer.amplitude_bits_per_symbol;
            placement.values.push_back(layer.alphabet[idx]);
        }

        // Supports come out of unrank sorted, so one reverse sweep removes them.
        for (auto it = relative.rbegin(); it != relative.rend(); ++it)
            available.erase(available.begin() + *it);

        placements.push_back(std::move(placement));
    }
    return placements;
}

PlacementInversion placements_to_bits(const ValidatedSpec& spec, const std::vector<LayerPlacement>& placements) {
    if (placements.size() != spec.layers().size())
        fail(ErrorCode::DimensionMismatch, "placement count does not match layer count");

    PlacementInversion out;
    out.bits.assign(spec.total_bits(), 0);

    std::vector<int> available(spec.n());
    for (int i = 0; i < spec.n(); ++i) available[i] = i;

    std::size_t cursor = 0;
    for (std::size_t l = 0; l < placements.size(); ++l) {
        const LayerInfo& layer = spec.layers()[l];
        const LayerPlacement& placement = placements[l];
        if (static_cast<int>(placement.support.size()) != layer.k ||
            static_cast<int>(placement.values.size()) != layer.k)
            fail(ErrorCode::DimensionMismatch, "placement size does not match layer K");

        std::vector<int> relative;
        relative.reserve(layer.k);
        int prev = -1;
        for (int abs_index : placement.support) {
            if (abs_index <= prev) fail(ErrorCode::InvalidSubset, "support must be strictly increasing");
            prev = abs_index;
            const auto it = std::lower_bound(available.begin(), available.end(), abs_index);
            if (it == available.end() || *it != abs_index)
                fail(ErrorCode::InvalidSubset, "support index not available to this layer");
            const int pos = static_cast<int>(it - available.begin());
            if (pos >= layer.pool_size)
                fail(ErrorCode::InvalidSubset, "support index outside the layer pool");
            relative.push_back(pos);
        }

        BigInt rank = combination_rank(relative, layer.pool_size, layer.k, *layer.binomials);
        const BigInt field_limit = BigInt(1) << layer.support_bits;
        if (rank >= field_limit) {
            // Reachable only for decoder estimates: C(pool, k) can exceed the
            // 2^support_bits encodable ranks. Clamp and report.
            out.overflow = true;
            rank = field_limit - 1;
        }
        bigint_to_bits(rank, out.bits, cursor, layer.support_bits);
        cursor += layer.support_bits;

        for (int i = 0; i < layer.k; ++i) {
            const auto it = std::find(layer.alphabet.begin(), layer.alphabet.end(), placement.values[i]);
            if (it == layer.alphabet.end())
                fail(ErrorCode::InvalidArgument, "placement value not in the layer alphabet");
            uint_to_bits(static_cast<unsigned>(it - layer.alphabet.begin()), out.bits, cursor,
                         layer.amplitude_bits_per_symbol);
            cursor += layer.amplitude_bits_per_symbol;
        }

        for (auto it = relative.rbegin(); it != relative.rend(); ++it)
            available.erase(available.begin() + *it);
    }
    return out;
}

std::vector<double> placements_to_vector(const ValidatedSpec& spec, const std::vector<LayerPlacement>& placements) {
    std::vector<double> x(static_cast<std::size_t>(spec.n()), 0.0);
    for (const LayerPlacement& placement : placements)
        for (std::size_t i = 0; i < placement.support.size(); ++i)
            x[static_cast<std::size_t>(placement.support[i])] = placement.values[i];
    return x;
}

EncodeResult encode(const ValidatedSpec& spec, const Bits& bits) {
    EncodeResult result;
    result.placements = bits_to_placements(spec, bits);
    result.codeword = apply_dictionary(spec, placements_to_vector(spec, result.placements));
    return result;
}

std::string bits_to_hex(const Bits& bits) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size()) nibble |= (bits[i + j] & 1u);
        }
        hex.push_back(digits[nibble]);
    }
    return hex;
}

Bits hex_to_bits(const std::string& hex, int nbits) {
    const std::size_t expected = (static_cast<std::size_t>(nbits) + 3) / 4;
    if (hex.size() != expected)
        fail(ErrorCode::BitLengthMismatch, "hex length must be ceil(nbits / 4) digits");
    Bits bits(static_cast<std::size_t>(nbits), 0);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const char c = hex[i];
        unsigned nibble;
        if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A') + 10;
        else fail(ErrorCode::InvalidArgument, "non-hex digit in bit string");
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t bit_index = i * 4 + j;
            const std::uint8_t bit = static_cast<std::uint8_t>((nibble >> (3 - j)) & 1u);
            if (bit_index < bits.size()) bits[bit_index] = bit;
            else if (bit) fail(ErrorCode::InvalidArgument, "set bits past the message length");
        }
    }
    return bits;
}

} // namespace oss
