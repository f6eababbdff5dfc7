#include "oss/coding_gain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "oss/encoder.hpp"
#include "oss/errors.hpp"

namespace oss {

namespace {

// Codebook held as fixed-stride sparse rows: nnz (index, value) entries per
// codeword, indices sorted ascending. Dictionaries are orthonormal, so
// pairwise distances are computed on the sparse coefficient vectors.
struct SparseCodebook {
    int nnz = 0;
    std::vector<int> indices;
    std::vector<double> values;
    std::size_t size = 0;

    const int* idx(std::size_t c) const { return indices.data() + c * nnz; }
    const double* val(std::size_t c) const { return values.data() + c * nnz; }
};

SparseCodebook enumerate_codebook(const ValidatedSpec& spec) {
    const int total_bits = spec.total_bits();
    if (total_bits > 20) fail(ErrorCode::CodebookTooLarge, "codebook beyond 2^20 codewords");
    const std::size_t count = std::size_t{1} << total_bits;

    SparseCodebook book;
    book.nnz = spec.total_sparsity();
    book.size = count;
    book.indices.resize(count * book.nnz);
    book.values.resize(count * book.nnz);

    Bits bits(static_cast<std::size_t>(total_bits));
    std::vector<std::pair<int, double>> entries(static_cast<std::size_t>(book.nnz));
    for (std::size_t word = 0; word < count; ++word) {
        for (int b = 0; b < total_bits; ++b)
            bits[static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>((word >> (total_bits - 1 - b)) & 1u);
        const auto placements = bits_to_placements(spec, bits);
        std::size_t e = 0;
        for (const LayerPlacement& p : placements)
            for (std::size_t i = 0; i < p.support.size(); ++i)
                entries[e++] = {p.support[i], p.values[i]};
        std::sort(entries.begin(), entries.end());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            book.indices[word * book.nnz + i] = entries[i].first;
            book.values[word * book.nnz + i] = entries[i].second;
        }
    }
    return book;
}

double sparse_distance_sq(const int* ia, const double* va, const int* ib, const double* vb, int nnz) {
    double d2 = 0.0;
    int p = 0, q = 0;
    while (p < nnz && q < nnz) {
        if (ia[p] == ib[q]) {
            const double d = va[p] - vb[q];
            d2 += d * d;
            ++p;
            ++q;
        } else if (ia[p] < ib[q]) {
            d2 += va[p] * va[p];
            ++p;
        } else {
            d2 += vb[q] * vb[q];
            ++q;
        }
    }
    for (; p < nnz; ++p) d2 += va[p] * va[p];
    for (; q < nnz; ++q) d2 += vb[q] * vb[q];
    return d2;
}

int resolve_threads(int requested, std::size_t codebook_size) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    int threads = static_cast<int>(std::min<unsigned>(hw, 8));
    if (codebook_size < 1u << 12) threads = 1; // not worth spawning for tiny codebooks
    return threads;
}

} // namespace

MinDistanceProfile min_distance_exhaustive(const ValidatedSpec& spec, int num_threads) {
    const SparseCodebook book = enumerate_codebook(spec);
    if (book.size < 2) fail(ErrorCode::InvalidArgument, "codebook has fewer than two codewords");

    const int threads = resolve_threads(num_threads, book.size);
    const int nnz = book.nnz;

    // Pass 1: global minimum pairwise distance.
    std::vector<double> local_min(static_cast<std::size_t>(threads), std::numeric_limits<double>::infinity());
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i = static_cast<std::size_t>(t); i < book.size; i += static_cast<std::size_t>(threads)) {
                    const int* ia = book.idx(i);
                    const double* va = book.val(i);
                    for (std::size_t j = i + 1; j < book.size; ++j) {
                        const double d2 = sparse_distance_sq(ia, va, book.idx(j), book.val(j), nnz);
                        if (d2 < best) best = d2;
                    }
                }
                local_min[static_cast<std::size_t>(t)] = best;
            });
        }
        for (auto& th : pool) th.join();
    }
    const double d_min_sq = *std::min_element(local_min.begin(), local_min.end());

    // Pass 2: neighbors at the minimum, accumulated per codeword.
    const double cut = d_min_sq * (1.0 + 1e-12);
    std::vector<std::vector<std::uint32_t>> counts(
        static_cast<std::size_t>(threads), std::vector<std::uint32_t>(book.size, 0));
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                auto& mine = counts[static_cast<std::size_t>(t)];
                for (std::size_t i = static_cast<std::size_t>(t); i < book.size; i += static_cast<std::size_t>(threads)) {
                    const int* ia = book.idx(i);
                    const double* va = book.val(i);
                    for (std::size_t j = i + 1; j < book.size; ++j) {
                        const double d2 = sparse_distance_sq(ia, va, book.idx(j), book.val(j), nnz);
                        if (d2 <= cut) {
                            ++mine[i];
                            ++mine[j];
                        }
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    double total_neighbors = 0.0;
    for (std::size_t c = 0; c < book.size; ++c) {
        std::uint64_t sum = 0;
        for (int t = 0; t < threads; ++t) sum += counts[static_cast<std::size_t>(t)][c];
        total_neighbors += static_cast<double>(sum);
    }

    MinDistanceProfile profile;
    profile.d_min_sq = d_min_sq;
    profile.mean_nearest_neighbors = total_neighbors / static_cast<double>(book.size);
    profile.codebook_size = book.size;
    return profile;
}

double nominal_coding_gain_db(const ValidatedSpec& spec, double d_min_sq) {
    const double rate = code_rate(spec);
    const double es = average_symbol_energy(spec);
    if (!(d_min_sq > 0.0) || !(rate > 0.0) || !(es > 0.0))
        fail(ErrorCode::InvalidArgument, "gain needs positive d_min, rate, and symbol energy");
    return 10.0 * std::log10((d_min_sq / 4.0) / (es / rate));
}

namespace {

int exact_log2(int n) {
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
        fail(ErrorCode::UnsupportedN, "closed-form gain rows need N to be a power of two");
    return std::bit_width(static_cast<unsigned>(n)) - 1;
}

} // namespace

GainReport effective_coding_gain(GainRowKind kind, int n) {
    GainReport report;
    report.kind = kind;
    report.n = n;

    switch (kind) {
    case GainRowKind::Biorthogonal: {
        const int m = exact_log2(n);
        report.bits = m + 1;
        report.d_min_sq = 2.0 * n; // antipodal unit-energy symbols, Hamming distance N/2
        const double nominal = (m + 1) / 2.0;
        report.nearest_neighbors_per_bit = (2.0 * n - 2.0) / m;
        report.nominal_gain_db = 10.0 * std::log10(nominal);
        report.effective_gain_db =
            report.nominal_gain_db - 0.2 * std::log2(report.nearest_neighbors_per_bit);
        return report;
    }
    case GainRowKind::OssSingleLayer: {
        const int m = exact_log2(n);
        report.bits = m;
        report.d_min_sq = 2.0;
        const double nominal = m / 2.0;
        report.nearest_neighbors_per_bit = (n - 1.0) / m;
        report.nominal_gain_db = 10.0 * std::log10(nominal);
        report.effective_gain_db =
            report.nominal_gain_db - 0.2 * std::log2(report.nearest_neighbors_per_bit);
        return report;
    }
    case GainRowKind::OssTwoLayer: {
        if (n < 3) fail(ErrorCode::UnsupportedN, "two-layer row needs N >= 3");
        CodeSpec spec;
        spec.n = n;
        spec.layers = {{1, {1.0}, std::nullopt}, {1, {-1.0}, std::nullopt}};
        const ValidatedSpec v = validate_spec(spec);
        const MinDistanceProfile profile = min_distance_exhaustive(v);
        report.bits = v.total_bits();
        report.d_min_sq = profile.d_min_sq;
        report.nominal_gain_db = nominal_coding_gain_db(v, profile.d_min_sq);
        report.nearest_neighbors_per_bit = profile.mean_nearest_neighbors / v.total_bits();
        report.effective_gain_db =
            report.nominal_gain_db - 0.2 * std::log2(report.nearest_neighbors_per_bit);
        return report;
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown gain row kind");
}

const std::vector<CitedGainRow>& cited_gain_rows() {
    static const std::vector<CitedGainRow> rows = {
        {"RM", 64, 7, 16, 5.4, 4.4},      {"Golay", 64, 22, 16, 7.4, 6.0},
        {"RM", 128, 8, 64, 6.0, 4.9},     {"Golay", 128, 29, 32, 8.6, 6.9},
        {"RM", 256, 9, 128, 6.5, 5.4},    {"Golay", 256, 37, 64, 9.7, 7.6},
    };
    return rows;
}

} // namespace oss
