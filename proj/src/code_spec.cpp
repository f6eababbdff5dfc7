#include "oss/code_spec.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace oss {

namespace {

bool is_power_of_two(std::size_t v) {
    return v != 0 && std::has_single_bit(v);
}

void check_dictionary(const CodeSpec& spec) {
    switch (spec.dictionary) {
    case DictionaryKind::Identity:
        return;
    case DictionaryKind::Hadamard:
        if (!is_power_of_two(static_cast<std::size_t>(spec.n)))
            fail(ErrorCode::HadamardOrderInvalid, "Hadamard dictionary needs N to be a power of two");
        return;
    case DictionaryKind::Explicit: {
        const auto& u = spec.dictionary_matrix;
        const std::size_t n = static_cast<std::size_t>(spec.n);
        if (u.size() != n) fail(ErrorCode::DimensionMismatch, "explicit dictionary must be N x N");
        for (const auto& row : u)
            if (row.size() != n) fail(ErrorCode::DimensionMismatch, "explicit dictionary must be N x N");
        // U^T U = I to 1e-10 per entry; U is square, so this also certifies U U^T.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) dot += u[r][i] * u[r][j];
                const double expect = (i == j) ? 1.0 : 0.0;
                if (std::abs(dot - expect) > 1e-10)
                    fail(ErrorCode::NonOrthonormalDictionary, "U^T U deviates from identity beyond 1e-10");
            }
        }
        return;
    }
    }
}

} // namespace

ValidatedSpec validate_spec(const CodeSpec& spec) {
    if (spec.n <= 0) fail(ErrorCode::InvalidArgument, "N must be positive");
    if (spec.layers.empty()) fail(ErrorCode::InvalidArgument, "at least one layer required");

    check_dictionary(spec);

    ValidatedSpec v;
    v.spec_ = spec;

    std::set<double> seen_amplitudes;
    int used = 0;
    for (std::size_t l = 0; l < spec.layers.size(); ++l) {
        const LayerSpec& layer = spec.layers[l];
        std::ostringstream where;
        where << "layer " << l;

        if (layer.k <= 0) fail(ErrorCode::InvalidArgument, where.str() + ": K must be positive");
        if (layer.alphabet.empty()) fail(ErrorCode::InvalidArgument, where.str() + ": alphabet is empty");
        if (!is_power_of_two(layer.alphabet.size()))
            fail(ErrorCode::NonPowerOfTwoAlphabet, where.str() + ": alphabet size must be a power of two");

        std::set<double> in_layer;
        for (double a : layer.alphabet) {
            if (!std::isfinite(a)) fail(ErrorCode::InvalidArgument, where.str() + ": amplitude not finite");
            if (a == 0.0) fail(ErrorCode::ZeroInAlphabet, where.str() + ": amplitude 0 is reserved for inactive indices");
            if (!in_layer.insert(a).second)
                fail(ErrorCode::InvalidArgument, where.str() + ": duplicate amplitude");
            if (!seen_amplitudes.insert(a).second)
                fail(ErrorCode::OverlappingAlphabets, where.str() + ": amplitude shared with an earlier layer");
        }

        const int remaining = spec.n - used;
        if (layer.k > remaining)
            fail(ErrorCode::SparsityExceedsPool, where.str() + ": K exceeds the remaining index pool");

        int pool = layer.pool_size.value_or(remaining);
        if (pool < layer.k || pool > remaining)
            fail(ErrorCode::SparsityExceedsPool, where.str() + ": pool_size must lie in [K, remaining]");

        LayerInfo info;
        info.k = layer.k;
        info.alphabet = layer.alphabet;
        info.pool_size = pool;
        info.preceding_sparsity = used;
        info.support_bits = floor_log2_binomial(pool, layer.k);
        info.amplitude_bits_per_symbol = std::bit_width(layer.alphabet.size()) - 1;
        info.bit_budget = info.support_bits + layer.k * info.amplitude_bits_per_symbol;
        info.binomials = std::make_shared<BinomialTable>(pool, layer.k);

        v.layers_.push_back(std::move(info));
        v.total_bits_ += v.layers_.back().bit_budget;
        used += layer.k;
    }
    v.total_sparsity_ = used;
    return v;
}

const LayerInfo& ValidatedSpec::layer(int l) const {
    if (l < 0 || l >= num_layers())
        fail(ErrorCode::InvalidArgument, "layer index out of range");
    return layers_[static_cast<std::size_t>(l)];
}

int layer_bit_budget(const ValidatedSpec& spec, int l) {
    return spec.layer(l).bit_budget;
}

double code_rate(const ValidatedSpec& spec) {
    return static_cast<double>(spec.total_bits()) / spec.n();
}

double average_symbol_energy(const ValidatedSpec& spec) {
    // Per-layer terms are kept exact for integer-valued energies; a single
    // final division keeps rational specs (like Es = 5/24) correctly rounded.
    double total = 0.0;
    for (const LayerInfo& layer : spec.layers()) {
        double sum_sq = 0.0;
        for (double a : layer.alphabet) sum_sq += a * a;
        total += layer.k * (sum_sq / static_cast<double>(layer.alphabet.size()));
    }
    return total / spec.n();
}

} // namespace oss
