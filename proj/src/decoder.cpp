#include "oss/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oss/dictionary.hpp"
#include "oss/errors.hpp"

namespace oss {

namespace {

// Log odds that y_n carries a layer symbol rather than a zero:
//   log[ p * mean_j exp(-(y-a_j)^2 / 2s2) ] - log[ (1-p) * exp(-y^2 / 2s2) ].
// The common e^{-y^2/2s2} factor is divided out analytically, which both
// avoids underflow at large |y|/sigma and keeps the per-element statistic a
// logsumexp of terms LINEAR in y (for singleton alphabets: exactly
// monotone in a*y, which is what makes the ordered-statistics shortcut
// selection-identical).
double support_log_odds(double y, const LayerInfo& layer, int remaining, double sigma) {
    const double inv_s2 = 1.0 / (sigma * sigma);
    double max_t = -std::numeric_limits<double>::infinity();
    double terms[2]; // reused small buffer path for the common 1-2 amplitude case
    std::vector<double> heap_terms;
    const std::size_t count = layer.alphabet.size();
    double* t = count <= 2 ? terms : (heap_terms.resize(count), heap_terms.data());
    for (std::size_t j = 0; j < count; ++j) {
        const double a = layer.alphabet[j];
        t[j] = (a * y - 0.5 * a * a) * inv_s2;
        max_t = std::max(max_t, t[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < count; ++j) sum += std::exp(t[j] - max_t);
    const double log_mean_ratio = max_t + std::log(sum) - std::log(static_cast<double>(count));

    const double p = static_cast<double>(layer.k) / remaining;
    return log_mean_ratio + std::log(p) - std::log1p(-p);
}

struct ScoredIndex {
    double key;
    int position; // position within the available list, which is sorted ascending
};

// K highest keys, ties to the lowest index. nth_element would be cheaper
// asymptotically but K is tiny; a partial selection sort keeps it branch-lean
// and deterministic.
void select_top_k(std::vector<ScoredIndex>& scored, int k) {
    const auto better = [](const ScoredIndex& a, const ScoredIndex& b) {
        if (a.key != b.key) return a.key > b.key;
        return a.position < b.position;
    };
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), better);
}

DecodeResult finish(const ValidatedSpec& spec, std::vector<LayerPlacement> placements,
                    std::uint32_t flags, std::uint64_t evaluations) {
    DecodeResult result;
    const PlacementInversion inv = placements_to_bits(spec, placements);
    result.bits = inv.bits;
    if (inv.overflow) flags |= static_cast<std::uint32_t>(DecodeFlag::DecodeOverflow);
    result.placements = std::move(placements);
    result.flags = flags;
    result.score_evaluations = evaluations;
    return result;
}

void check_observation(const ValidatedSpec& spec, const Observation& obs) {
    if (static_cast<int>(obs.y.size()) != spec.n())
        fail(ErrorCode::DimensionMismatch, "observation length does not match N");
    if (!(obs.sigma > 0.0)) fail(ErrorCode::InvalidArgument, "observation sigma must be positive");
}

double nearest_amplitude(const std::vector<double>& alphabet, double z) {
    double best = alphabet.front();
    double best_d = std::abs(z - best);
    for (std::size_t j = 1; j < alphabet.size(); ++j) {
        const double d = std::abs(z - alphabet[j]);
        if (d < best_d) { // strict: earliest alphabet entry wins ties
            best_d = d;
            best = alphabet[j];
        }
    }
    return best;
}

// Shapes the closed-form decoders accept. Returns the shared amplitude scale.
double singleton_shape_scale(const ValidatedSpec& spec, bool need_two_layers, bool need_equal_k) {
    const auto& layers = spec.layers();
    for (const LayerInfo& layer : layers) {
        if (layer.alphabet.size() != 1)
            fail(ErrorCode::UnsupportedSpecShape, "closed-form decoders need singleton alphabets");
        if (layer.pool_size != spec.n() - layer.preceding_sparsity)
            fail(ErrorCode::UnsupportedSpecShape, "closed-form decoders need default (full) pools");
    }
    if (layers.size() == 1) {
        if (need_two_layers) fail(ErrorCode::UnsupportedSpecShape, "decoder needs exactly two layers");
        if (!(layers[0].alphabet[0] > 0.0))
            fail(ErrorCode::UnsupportedSpecShape, "single-layer shortcut needs a positive amplitude");
        return layers[0].alphabet[0];
    }
    if (layers.size() != 2)
        fail(ErrorCode::UnsupportedSpecShape, "closed-form decoders accept one or two layers");
    const double a = layers[0].alphabet[0];
    if (!(a > 0.0) || layers[1].alphabet[0] != -a)
        fail(ErrorCode::UnsupportedSpecShape, "two-layer shortcut needs alphabets {+a} and {-a}");
    if (need_equal_k && layers[0].k != layers[1].k)
        fail(ErrorCode::UnsupportedSpecShape, "two-stage decoder needs K1 = K2");
    return a;
}

} // namespace

double posterior_support_score(double y_n, const LayerInfo& layer, int remaining, double sigma) {
    if (remaining <= 0 || layer.k > remaining)
        fail(ErrorCode::InvalidArgument, "remaining pool cannot hold the layer");
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");
    const double odds = support_log_odds(y_n, layer, remaining, sigma);
    // Logistic of the log odds; saturates to 0/1 only where the posterior
    // genuinely rounds there.
    if (odds >= 0.0) return 1.0 / (1.0 + std::exp(-odds));
    const double e = std::exp(odds);
    return e / (1.0 + e);
}

DecodeResult emap_ssc_decode(const ValidatedSpec& spec, const Observation& obs) {
    check_observation(spec, obs);
    const std::vector<double> z = invert_dictionary(spec, obs.y);

    std::vector<int> available(static_cast<std::size_t>(spec.n()));
    for (int i = 0; i < spec.n(); ++i) available[static_cast<std::size_t>(i)] = i;

    std::uint64_t evaluations = 0;
    std::vector<LayerPlacement> placements;
    placements.reserve(spec.layers().size());
    std::vector<ScoredIndex> scored;

    for (const LayerInfo& layer : spec.layers()) {
        const int remaining = static_cast<int>(available.size());

        // Score every still-available index; only pool members are
        // selectable, but the posterior is evaluated on all of them (the
        // support prior is K over remaining).
        scored.clear();
        scored.reserve(static_cast<std::size_t>(remaining));
        for (int pos = 0; pos < remaining; ++pos) {
            const double odds =
                support_log_odds(z[static_cast<std::size_t>(available[static_cast<std::size_t>(pos)])],
                                 layer, remaining, obs.sigma);
            ++evaluations;
            if (pos < layer.pool_size) scored.push_back({odds, pos});
        }
        select_top_k(scored, layer.k);

        std::vector<int> chosen_positions(static_cast<std::size_t>(layer.k));
        for (int i = 0; i < layer.k; ++i) chosen_positions[static_cast<std::size_t>(i)] = scored[static_cast<std::size_t>(i)].position;
        std::sort(chosen_positions.begin(), chosen_positions.end());

        LayerPlacement placement;
        placement.support.reserve(static_cast<std::size_t>(layer.k));
        placement.values.reserve(static_cast<std::size_t>(layer.k));
        for (int pos : chosen_positions) {
            const int abs_index = available[static_cast<std::size_t>(pos)];
            placement.support.push_back(abs_index);
            placement.values.push_back(
                nearest_amplitude(layer.alphabet, z[static_cast<std::size_t>(abs_index)]));
        }
        for (auto it = chosen_positions.rbegin(); it != chosen_positions.rend(); ++it)
            available.erase(available.begin() + *it);
        placements.push_back(std::move(placement));
    }

    return finish(spec, std::move(placements), 0, evaluations);
}

DecodeResult ordered_statistics_decode(const ValidatedSpec& spec, const Observation& obs) {
    check_observation(spec, obs);
    const double a = singleton_shape_scale(spec, /*need_two_layers=*/false, /*need_equal_k=*/false);
    (void)a;
    const std::vector<double> z = invert_dictionary(spec, obs.y);

    const int n = spec.n();
    std::vector<ScoredIndex> scored(static_cast<std::size_t>(n));

    // Layer 1: the K1 largest coefficients.
    for (int i = 0; i < n; ++i) scored[static_cast<std::size_t>(i)] = {z[static_cast<std::size_t>(i)], i};
    const int k1 = spec.layer(0).k;
    select_top_k(scored, k1);

    std::vector<LayerPlacement> placements;
    LayerPlacement first;
    first.support.reserve(static_cast<std::size_t>(k1));
    for (int i = 0; i < k1; ++i) first.support.push_back(scored[static_cast<std::size_t>(i)].position);
    std::sort(first.support.begin(), first.support.end());
    first.values.assign(static_cast<std::size_t>(k1), spec.layer(0).alphabet[0]);
    placements.push_back(std::move(first));

    if (spec.num_layers() == 2) {
        // Layer 2: the K2 smallest among the rest.
        std::vector<bool> taken(static_cast<std::size_t>(n), false);
        for (int v : placements[0].support) taken[static_cast<std::size_t>(v)] = true;
        scored.clear();
        for (int i = 0; i < n; ++i)
            if (!taken[static_cast<std::size_t>(i)]) scored.push_back({-z[static_cast<std::size_t>(i)], i});
        const int k2 = spec.layer(1).k;
        select_top_k(scored, k2);
        LayerPlacement second;
        second.support.reserve(static_cast<std::size_t>(k2));
        for (int i = 0; i < k2; ++i) second.support.push_back(scored[static_cast<std::size_t>(i)].position);
        std::sort(second.support.begin(), second.support.end());
        second.values.assign(static_cast<std::size_t>(k2), spec.layer(1).alphabet[0]);
        placements.push_back(std::move(second));
    }

    return finish(spec, std::move(placements), 0, 0);
}

DecodeResult two_stage_magnitude_decode(const ValidatedSpec& spec, const Observation& obs) {
    check_observation(spec, obs);
    singleton_shape_scale(spec, /*need_two_layers=*/true, /*need_equal_k=*/true);
    const std::vector<double> z = invert_dictionary(spec, obs.y);

    const int n = spec.n();
    const int k = spec.layer(0).k;

    // Stage 1: the 2K strongest magnitudes.
    std::vector<ScoredIndex> scored(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        scored[static_cast<std::size_t>(i)] = {std::abs(z[static_cast<std::size_t>(i)]), i};
    select_top_k(scored, 2 * k);

    // Stage 2: split by sign. A split other than (K, K) cannot come from a
    // correct support estimate; fall back to the K algebraically largest so
    // the bit inversion stays well-formed, and flag it.
    std::vector<ScoredIndex> selected(scored.begin(), scored.begin() + 2 * k);
    int positive = 0;
    for (const ScoredIndex& s : selected)
        if (z[static_cast<std::size_t>(s.position)] > 0.0) ++positive;

    std::uint32_t flags = 0;
    if (positive != k) flags |= static_cast<std::uint32_t>(DecodeFlag::SignSplitImbalance);

    for (ScoredIndex& s : selected) s.key = z[static_cast<std::size_t>(s.position)];
    select_top_k(selected, k); // reorder: K largest signed values first

    LayerPlacement first, second;
    for (int i = 0; i < k; ++i) first.support.push_back(selected[static_cast<std::size_t>(i)].position);
    for (int i = k; i < 2 * k; ++i) second.support.push_back(selected[static_cast<std::size_t>(i)].position);
    std::sort(first.support.begin(), first.support.end());
    std::sort(second.support.begin(), second.support.end());
    first.values.assign(static_cast<std::size_t>(k), spec.layer(0).alphabet[0]);
    second.values.assign(static_cast<std::size_t>(k), spec.layer(1).alphabet[0]);

    std::vector<LayerPlacement> placements;
    placements.push_back(std::move(first));
    placements.push_back(std::move(second));
    return finish(spec, std::move(placements), flags, 0);
}

DecodeResult run_decoder(DecoderKind kind, const ValidatedSpec& spec, const Observation& obs) {
    switch (kind) {
    case DecoderKind::EmapSsc: return emap_ssc_decode(spec, obs);
    case DecoderKind::OrderedStatistics: return ordered_statistics_decode(spec, obs);
    case DecoderKind::TwoStageMagnitude: return two_stage_magnitude_decode(spec, obs);
    }
    fail(ErrorCode::InvalidArgument, "unknown decoder kind");
}

} // namespace oss
