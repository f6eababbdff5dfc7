#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oss/code_spec.hpp"
#include "oss/decoder.hpp"

namespace oss {

struct SweepPlan {
    std::vector<double> ebn0_grid_db; // strictly increasing
    std::uint64_t seed = 0;
    std::uint64_t max_trials = 100000;   // >= 1000
    std::uint64_t target_errors = 100;   // >= 20; stop a point early once reached
    DecoderKind decoder = DecoderKind::EmapSsc;
    int workers = 1;                     // worker threads; results do not depend on this
};

struct BlerPoint {
    double ebn0_db = 0.0;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double bler = 0.0;
    double ci_low = 0.0;  // Wilson 95%
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0; // base stream id of the point, for replay
};

// Monte Carlo BLER sweep. Each trial is a pure function of
// (seed, point_index, trial_index): trial t of point p draws its message
// bits from stream id (p << 44) | (t << 2) and its noise from
// (p << 44) | (t << 2) | 1, so any worker count partitions identical trials
// and produces identical results. A block error is any information-bit
// mismatch; a decode that flags overflow counts as an error too. Early
// stopping scans trials in index order and cuts exactly where the
// target_errors-th error lands, so the estimate uses exactly the trials up
// to the cut.
std::vector<BlerPoint> run_sweep(const ValidatedSpec& spec, const SweepPlan& plan);

// Wilson score interval for a 95% binomial confidence band.
void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high);

enum class AnalyticKind {
    Exact,      // single layer, singleton positive-amplitude alphabet
    UpperBound, // two layers {+a}/{-a}, equal K
};

struct ComparePoint {
    BlerPoint mc;
    double analytic_value = 0.0;
    AnalyticKind kind = AnalyticKind::Exact;
    bool covered = false; // exact: CI covers the value; bound: mc <= bound + 3 SE
};

// MC sweep side by side with the matching analytic curve. Throws
// Error(AnalyticUnavailable) when the spec has no analytic companion.
std::vector<ComparePoint> compare_report(const ValidatedSpec& spec, const SweepPlan& plan);

struct FblRow {
    int n = 0;
    double approx_rate = 0.0;             // normal approximation at (snr, n, eps)
    std::optional<double> best_spec_rate; // highest-rate candidate meeting eps at this n
    std::optional<std::string> best_spec_name;
};

// Normal-approximation rate over a blocklength grid, optionally searching a
// candidate spec list (matched by n) for the highest-rate code whose MC BLER
// at the given SNR stays at or under epsilon.
std::vector<FblRow> fbl_table(const std::vector<int>& n_grid, double snr_db, double epsilon,
                              const std::vector<std::pair<std::string, CodeSpec>>& candidates,
                              std::uint64_t seed, std::uint64_t max_trials, std::uint64_t target_errors,
                              int workers);

// Fixed CSV surfaces (documented in the README; byte-stable across runs).
void write_sweep_csv(std::ostream& out, const std::vector<BlerPoint>& points);
void write_compare_csv(std::ostream& out, const std::vector<ComparePoint>& points);
void write_fbl_csv(std::ostream& out, const std::vector<FblRow>& rows);

} // namespace oss
