#pragma once

#include <cstdint>
#include <vector>

#include "oss/code_spec.hpp"
#include "oss/encoder.hpp"

namespace oss {

struct Observation {
    std::vector<double> y; // length N
    double sigma = 0.0;    // channel noise standard deviation, > 0
};

enum class DecodeFlag : std::uint32_t {
    DecodeOverflow = 1u << 0,    // an estimated support ranked outside its bit field (clamped)
    SignSplitImbalance = 1u << 1 // two-stage decoder saw a +/- split other than (K, K)
};

struct DecodeResult {
    Bits bits;
    std::vector<LayerPlacement> placements;
    std::uint32_t flags = 0;
    std::uint64_t score_evaluations = 0; // posterior evaluations spent (element-MAP decoder)

    bool has_flag(DecodeFlag f) const { return (flags & static_cast<std::uint32_t>(f)) != 0; }
};

// Posterior probability that index n carries a layer-l symbol, given the
// de-dictionaried observation value y_n, a uniform K-of-remaining support
// prior, and equiprobable alphabet values. Evaluated in log domain so it
// stays meaningful past |y|/sigma ~ 38 where the raw Gaussian likelihoods
// underflow.
double posterior_support_score(double y_n, const LayerInfo& layer, int remaining, double sigma);

// Successive element-MAP decoder: per layer, score every still-available
// index, keep the K_l highest-posterior indices inside the layer's pool
// (ties broken toward the lowest index), pick each amplitude by nearest
// alphabet value, then invert the placement mapping back to bits. Estimate
// anomalies surface as flags, never exceptions.
DecodeResult emap_ssc_decode(const ValidatedSpec& spec, const Observation& obs);

// Closed-form shortcut for singleton-alphabet specs: single layer {+a}, or
// two layers {+a}/{-a}: layer-1 support = K_1 largest y_n, layer-2 support =
// K_2 smallest among the rest. Produces the same selections as
// emap_ssc_decode on those specs.
DecodeResult ordered_statistics_decode(const ValidatedSpec& spec, const Observation& obs);

// Two-stage magnitude decoder for two-layer {+a}/{-a}, K_1 = K_2: stage one
// takes the 2K largest |y_n|, stage two splits them by sign.
DecodeResult two_stage_magnitude_decode(const ValidatedSpec& spec, const Observation& obs);

enum class DecoderKind {
    EmapSsc,
    OrderedStatistics,
    TwoStageMagnitude,
};

DecodeResult run_decoder(DecoderKind kind, const ValidatedSpec& spec, const Observation& obs);

} // namespace oss
