#include "oss/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "oss/bler_bounds.hpp"
#include "oss/channel.hpp"
#include "oss/errors.hpp"
#include "oss/normal_approx.hpp"

namespace oss {

namespace {

// Stream-id packing: point index in the high bits, trial in the middle, the
// low two bits split purposes (0 = message bits, 1 = noise). Every trial of
// every point owns two private streams, so results cannot depend on how
// trials are spread over workers.
constexpr std::uint64_t kPurposeBits = 2;
constexpr std::uint64_t kTrialBits = 42;
constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << kTrialBits;
constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << (64 - kTrialBits - kPurposeBits);

std::uint64_t stream_id_for(std::uint64_t point, std::uint64_t trial, std::uint64_t purpose) {
    return (point << (kTrialBits + kPurposeBits)) | (trial << kPurposeBits) | purpose;
}

void validate_plan(const SweepPlan& plan) {
    if (plan.ebn0_grid_db.empty()) fail(ErrorCode::InvalidArgument, "empty Eb/N0 grid");
    for (std::size_t i = 1; i < plan.ebn0_grid_db.size(); ++i)
        if (!(plan.ebn0_grid_db[i] > plan.ebn0_grid_db[i - 1]))
            fail(ErrorCode::InvalidArgument, "Eb/N0 grid must be strictly increasing");
    if (plan.ebn0_grid_db.size() > kMaxPoints) fail(ErrorCode::InvalidArgument, "grid too large");
    if (plan.max_trials < 1000) fail(ErrorCode::InvalidArgument, "max_trials must be at least 1000");
    if (plan.max_trials > kMaxTrials) fail(ErrorCode::InvalidArgument, "max_trials exceeds the stream budget");
    if (plan.target_errors < 20) fail(ErrorCode::InvalidArgument, "target_errors must be at least 20");
    if (plan.workers < 1 || plan.workers > 256) fail(ErrorCode::InvalidArgument, "workers must lie in [1, 256]");
}

bool run_trial(const ValidatedSpec& spec, DecoderKind decoder, double sigma,
               std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    RngStream bit_stream(seed, stream_id_for(point, trial, 0));
    const Bits bits = random_bits(spec.total_bits(), bit_stream);
    const EncodeResult tx = encode(spec, bits);

    RngStream noise_stream(seed, stream_id_for(point, trial, 1));
    Observation obs;
    obs.sigma = sigma;
    obs.y = transmit(tx.codeword, {sigma}, noise_stream);

    const DecodeResult rx = run_decoder(decoder, spec, obs);
    return rx.flags != 0 || rx.bits != bits;
}

// One grid point. Trials are evaluated in waves; the stopping scan walks
// trial indices in order, so the cut lands on exactly the trial where the
// target error count is reached no matter how many workers filled the wave.
BlerPoint run_point(const ValidatedSpec& spec, DecoderKind decoder, double ebn0_db, double sigma,
                    std::uint64_t seed, std::uint64_t point, std::uint64_t max_trials,
                    std::uint64_t target_errors, int workers) {
    constexpr std::uint64_t kChunk = 2048;
    const std::uint64_t wave_size = kChunk * static_cast<std::uint64_t>(workers);
    std::vector<std::uint8_t> flags(wave_size);

    std::uint64_t scanned = 0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    bool stopped = false;

    while (!stopped && scanned < max_trials) {
        const std::uint64_t wave = std::min(wave_size, max_trials - scanned);
        if (workers <= 1 || wave < 2 * kChunk) {
            for (std::uint64_t i = 0; i < wave; ++i)
                flags[i] = run_trial(spec, decoder, sigma, seed, point, scanned + i) ? 1 : 0;
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            const std::uint64_t per = (wave + workers - 1) / static_cast<std::uint64_t>(workers);
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t lo = std::min(wave, per * static_cast<std::uint64_t>(w));
                const std::uint64_t hi = std::min(wave, lo + per);
                if (lo >= hi) break;
                pool.emplace_back([&, lo, hi] {
                    for (std::uint64_t i = lo; i < hi; ++i)
                        flags[i] = run_trial(spec, decoder, sigma, seed, point, scanned + i) ? 1 : 0;
                });
            }
            for (auto& th : pool) th.join();
        }
        for (std::uint64_t i = 0; i < wave; ++i) {
            errors += flags[i];
            if (errors >= target_errors) {
                trials = scanned + i + 1;
                stopped = true;
                break;
            }
        }
        if (!stopped) {
            scanned += wave;
            trials = scanned;
        }
    }

    BlerPoint result;
    result.ebn0_db = ebn0_db;
    result.snr_db = snr_db_from_ebn0_db(spec, ebn0_db);
    result.trials = trials;
    result.errors = errors;
    result.bler = trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0;
    wilson_interval(errors, trials, result.ci_low, result.ci_high);
    result.seed = seed;
    result.stream_id = stream_id_for(point, 0, 0);
    return result;
}

// Shape probe mirroring the closed-form decoders: exact curve for a single
// positive singleton layer, upper bound for the {+a}/{-a} pair.
AnalyticKind analytic_kind_for(const ValidatedSpec& spec, double& scale) {
    const auto& layers = spec.layers();
    for (const LayerInfo& layer : layers) {
        if (layer.alphabet.size() != 1 || layer.pool_size != spec.n() - layer.preceding_sparsity)
            fail(ErrorCode::AnalyticUnavailable, "no analytic companion for this spec shape");
    }
    if (layers.size() == 1 && layers[0].alphabet[0] > 0.0) {
        scale = layers[0].alphabet[0];
        return AnalyticKind::Exact;
    }
    if (layers.size() == 2 && layers[0].alphabet[0] > 0.0 &&
        layers[1].alphabet[0] == -layers[0].alphabet[0] && layers[0].k == layers[1].k) {
        scale = layers[0].alphabet[0];
        return AnalyticKind::UpperBound;
    }
    fail(ErrorCode::AnalyticUnavailable, "no analytic companion for this spec shape");
}

} // namespace

void wilson_interval(std::uint64_t errors, std::uint64_t trials, double& low, double& high) {
    if (trials == 0) {
        low = 0.0;
        high = 1.0;
        return;
    }
    constexpr double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    // At the boundaries the center and half-width coincide exactly, so pin the
    // endpoint instead of keeping the rounding residue.
    low = (errors == 0) ? 0.0 : std::max(0.0, center - half);
    high = (errors == trials) ? 1.0 : std::min(1.0, center + half);
}

std::vector<BlerPoint> run_sweep(const ValidatedSpec& spec, const SweepPlan& plan) {
    validate_plan(plan);
    std::vector<BlerPoint> points;
    points.reserve(plan.ebn0_grid_db.size());
    for (std::size_t p = 0; p < plan.ebn0_grid_db.size(); ++p) {
        const double ebn0_db = plan.ebn0_grid_db[p];
        const double sigma = sigma_from_ebn0_db(spec, ebn0_db);
        points.push_back(run_point(spec, plan.decoder, ebn0_db, sigma, plan.seed, p,
                                   plan.max_trials, plan.target_errors, plan.workers));
    }
    return points;
}

std::vector<ComparePoint> compare_report(const ValidatedSpec& spec, const SweepPlan& plan) {
    double scale = 1.0;
    const AnalyticKind kind = analytic_kind_for(spec, scale);

    const std::vector<BlerPoint> mc = run_sweep(spec, plan);
    std::vector<ComparePoint> report;
    report.reserve(mc.size());
    for (const BlerPoint& point : mc) {
        ComparePoint cp;
        cp.mc = point;
        cp.kind = kind;
        // Unit-amplitude analysis at the scaled noise level: amplitudes a with
        // noise sigma behave exactly like amplitudes 1 with noise sigma/a.
        const double sigma_eff = sigma_from_ebn0_db(spec, point.ebn0_db) / scale;
        if (kind == AnalyticKind::Exact) {
            cp.analytic_value = bler_single_layer_exact(spec.n(), spec.layer(0).k, sigma_eff);
            cp.covered = point.ci_low <= cp.analytic_value && cp.analytic_value <= point.ci_high;
        } else {
            cp.analytic_value = bler_two_layer_bound(spec.n(), spec.layer(0).k, sigma_eff);
            const double n = static_cast<double>(point.trials);
            const double se = n > 0 ? std::sqrt(point.bler * (1.0 - point.bler) / n) : 0.0;
            cp.covered = point.bler <= cp.analytic_value + 3.0 * se;
        }
        report.push_back(cp);
    }
    return report;
}

std::vector<FblRow> fbl_table(const std::vector<int>& n_grid, double snr_db, double epsilon,
                              const std::vector<std::pair<std::string, CodeSpec>>& candidates,
                              std::uint64_t seed, std::uint64_t max_trials, std::uint64_t target_errors,
                              int workers) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    const double snr = std::pow(10.0, snr_db / 10.0);

    std::vector<FblRow> rows;
    rows.reserve(n_grid.size());
    std::uint64_t point = 0;
    for (int n : n_grid) {
        if (n < 2) fail(ErrorCode::InvalidArgument, "blocklengths must be at least 2");
        FblRow row;
        row.n = n;
        row.approx_rate = normal_approx_rate(snr, n, epsilon);

        for (const auto& [name, candidate] : candidates) {
            if (candidate.n != n) continue;
            const ValidatedSpec v = validate_spec(candidate);
            const double sigma = std::sqrt(average_symbol_energy(v) / snr);
            const double ebn0_db = ebn0_db_from_sigma(v, sigma);
            const BlerPoint mc = run_point(v, DecoderKind::EmapSsc, ebn0_db, sigma, seed, point++,
                                           max_trials, target_errors, workers);
            if (mc.bler <= epsilon) {
                const double rate = code_rate(v);
                if (!row.best_spec_rate || rate > *row.best_spec_rate) {
                    row.best_spec_rate = rate;
                    row.best_spec_name = name;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string format_double(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<BlerPoint>& points) {
    out << "ebn0_db,snr_db,trials,errors,bler,ci_low,ci_high,seed,stream_id\n";
    for (const BlerPoint& p : points) {
        out << format_double(p.ebn0_db, "%.6g") << ',' << format_double(p.snr_db, "%.6g") << ','
            << p.trials << ',' << p.errors << ',' << format_double(p.bler) << ','
            << format_double(p.ci_low) << ',' << format_double(p.ci_high) << ',' << p.seed << ','
            << p.stream_id << '\n';
    }
}

void write_compare_csv(std::ostream& out, const std::vector<ComparePoint>& points) {
    out << "ebn0_db,snr_db,trials,errors,mc_bler,ci_low,ci_high,analytic,kind,covered\n";
    for (const ComparePoint& p : points) {
        out << format_double(p.mc.ebn0_db, "%.6g") << ',' << format_double(p.mc.snr_db, "%.6g") << ','
            << p.mc.trials << ',' << p.mc.errors << ',' << format_double(p.mc.bler) << ','
            << format_double(p.mc.ci_low) << ',' << format_double(p.mc.ci_high) << ','
            << format_double(p.analytic_value) << ','
            << (p.kind == AnalyticKind::Exact ? "exact" : "upper_bound") << ','
            << (p.covered ? 1 : 0) << '\n';
    }
}

void write_fbl_csv(std::ostream& out, const std::vector<FblRow>& rows) {
    out << "n,approx_rate,best_spec_rate,best_spec\n";
    for (const FblRow& row : rows) {
        out << row.n << ',' << format_double(row.approx_rate) << ',';
        if (row.best_spec_rate) out << format_double(*row.best_spec_rate);
        out << ',';
        if (row.best_spec_name) out << *row.best_spec_name;
        out << '\n';
    }
}

} // namespace oss
