#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oss/code_spec.hpp"

namespace oss {

// Message bits, MSB-first per layer field. bits[i] is 0 or 1.
using Bits = std::vector<std::uint8_t>;

// One layer's support and amplitudes; support is sorted ascending and values
// aligns with it.
struct LayerPlacement {
    std::vector<int> support;
    std::vector<double> values;
};

// Splits bits into per-layer (rank, amplitude-index) fields and materializes
// the supports/amplitudes. Layer l draws its support from the first M_l
// still-available indices; chosen indices leave the pool for later layers.
std::vector<LayerPlacement> bits_to_placements(const ValidatedSpec& spec, const Bits& bits);

struct PlacementInversion {
    Bits bits;
    bool overflow = false; // some support rank exceeded its bit field; the rank was clamped
};

// Exact inverse of bits_to_placements for any placements that are reachable
// from some bit string; placements with a rank outside the field (possible
// for decoder estimates when the pool is wider than 2^support_bits) set
// overflow and clamp. Supports must be disjoint, sorted, within the pool,
// and values must come from the layer alphabets.
PlacementInversion placements_to_bits(const ValidatedSpec& spec, const std::vector<LayerPlacement>& placements);

// x = sum of layer placements as a dense length-N vector.
std::vector<double> placements_to_vector(const ValidatedSpec& spec, const std::vector<LayerPlacement>& placements);

struct EncodeResult {
    std::vector<double> codeword;           // c = U x
    std::vector<LayerPlacement> placements; // the sparse x per layer
};

// Full encode chain: bits -> placements -> x -> U x.
EncodeResult encode(const ValidatedSpec& spec, const Bits& bits);

// Bits <-> hex (MSB-first nibbles). Hex length must be ceil(nbits/4); unused
// low bits of the last nibble must be zero.
std::string bits_to_hex(const Bits& bits);
Bits hex_to_bits(const std::string& hex, int nbits);

} // namespace oss
