#pragma once

#include <string>
#include <vector>

#include "oss/code_spec.hpp"

namespace oss {

struct MinDistanceProfile {
    double d_min_sq = 0.0;
    double mean_nearest_neighbors = 0.0; // codewords at d_min per codeword, averaged
    std::size_t codebook_size = 0;
};

// Enumerates every encodable codeword (all 2^B bit strings) and scans all
// pairs. Guarded to 2^B <= 2^20; throws CodebookTooLarge beyond that.
MinDistanceProfile min_distance_exhaustive(const ValidatedSpec& spec, int num_threads = 0);

// gamma_c = (d_min^2 / 4) / (Es / R), returned in dB.
double nominal_coding_gain_db(const ValidatedSpec& spec, double d_min_sq);

enum class GainRowKind {
    OssSingleLayer, // K=1, unit amplitude; closed-form gains
    OssTwoLayer,    // {+1}/{-1}, K=1 each; d_min and neighbor counts enumerated
    Biorthogonal,   // closed-form reference row
};

struct GainReport {
    GainRowKind kind;
    int n = 0;
    int bits = 0;                         // information bits per block
    double d_min_sq = 0.0;
    double nominal_gain_db = 0.0;
    double effective_gain_db = 0.0;       // nominal minus 0.2 dB per doubling of neighbors per bit
    double nearest_neighbors_per_bit = 0.0;
};

// Gains for one construction at block length n. Biorthogonal and single-layer
// rows use the closed forms ((log2 N + 1)/2 and log2(N)/2 nominal, neighbor
// counts 2N-2 and N-1 over log2 N); two-layer rows are computed from the
// actual spec via exhaustive enumeration.
GainReport effective_coding_gain(GainRowKind kind, int n);

// A literature reference row echoed into gain tables for comparison.
struct CitedGainRow {
    std::string family;
    int n;
    int bits;
    int d_min_sq;     // squared minimum Euclidean distance, as cited
    double nominal_gain_db;
    double effective_gain_db;
};

// Reed-Muller and Golay reference points at N = 64, 128, 256.
const std::vector<CitedGainRow>& cited_gain_rows();

} // namespace oss
