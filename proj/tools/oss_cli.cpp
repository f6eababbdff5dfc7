#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oss/channel.hpp"
#include "oss/code_spec.hpp"
#include "oss/coding_gain.hpp"
#include "oss/decoder.hpp"
#include "oss/encoder.hpp"
#include "oss/errors.hpp"
#include "oss/spec_json.hpp"
#include "oss/sweep.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) oss::fail(oss::ErrorCode::InvalidArgument, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) oss::fail(oss::ErrorCode::InvalidArgument, "cannot open output file: " + out_path);
    out << content;
    if (!out) oss::fail(oss::ErrorCode::InvalidArgument, "failed writing output file: " + out_path);
}

bool wants_json(const std::string& out_path) {
    return out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json";
}

oss::DecoderKind decoder_from_name(const std::string& name) {
    if (name == "emap_ssc") return oss::DecoderKind::EmapSsc;
    if (name == "ordered_stats") return oss::DecoderKind::OrderedStatistics;
    if (name == "two_stage") return oss::DecoderKind::TwoStageMagnitude;
    oss::fail(oss::ErrorCode::InvalidArgument,
              "decoder must be one of emap_ssc, ordered_stats, two_stage");
}

std::vector<double> parse_grid(const std::string& text) {
    double start = 0.0, step = 0.0, stop = 0.0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &tail) != 3)
        oss::fail(oss::ErrorCode::InvalidArgument, "--ebn0 must be start:step:stop");
    if (!(step > 0.0)) oss::fail(oss::ErrorCode::InvalidArgument, "--ebn0 step must be positive");
    if (stop < start) oss::fail(oss::ErrorCode::InvalidArgument, "--ebn0 stop must not precede start");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > stop + 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

json placements_to_json(const std::vector<oss::LayerPlacement>& placements) {
    json arr = json::array();
    for (std::size_t l = 0; l < placements.size(); ++l) {
        json jl;
        jl["layer"] = l;
        jl["support"] = placements[l].support;
        jl["values"] = placements[l].values;
        arr.push_back(std::move(jl));
    }
    return arr;
}

json flags_to_json(std::uint32_t flags) {
    json arr = json::array();
    if (flags & static_cast<std::uint32_t>(oss::DecodeFlag::DecodeOverflow)) arr.push_back("decode_overflow");
    if (flags & static_cast<std::uint32_t>(oss::DecodeFlag::SignSplitImbalance)) arr.push_back("sign_split_imbalance");
    return arr;
}

int run_encode(const std::string& spec_path, const std::string& bits_hex, const std::string& out_path) {
    const oss::ValidatedSpec spec = oss::validate_spec(oss::load_code_spec(spec_path));
    const oss::Bits bits = oss::hex_to_bits(bits_hex, spec.total_bits());
    const oss::EncodeResult result = oss::encode(spec, bits);

    json j;
    j["n"] = spec.n();
    j["bits_hex"] = bits_hex;
    j["codeword"] = result.codeword;
    j["placements"] = placements_to_json(result.placements);
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

int run_decode(const std::string& spec_path, const std::string& in_path, const std::string& decoder_name,
               const std::string& out_path) {
    const oss::ValidatedSpec spec = oss::validate_spec(oss::load_code_spec(spec_path));

    json jin = json::parse(slurp(in_path), nullptr, false);
    if (jin.is_discarded() || !jin.is_object())
        oss::fail(oss::ErrorCode::InvalidArgument, "observation file must be a JSON object");
    if (!jin.contains("samples") || !jin["samples"].is_array())
        oss::fail(oss::ErrorCode::InvalidArgument, "observation field 'samples' must be an array");
    if (!jin.contains("sigma") || !jin["sigma"].is_number())
        oss::fail(oss::ErrorCode::InvalidArgument, "observation field 'sigma' must be a number");

    oss::Observation obs;
    for (const json& v : jin["samples"]) {
        if (!v.is_number()) oss::fail(oss::ErrorCode::InvalidArgument, "samples must be numbers");
        obs.y.push_back(v.get<double>());
    }
    obs.sigma = jin["sigma"].get<double>();

    const oss::DecodeResult result = oss::run_decoder(decoder_from_name(decoder_name), spec, obs);

    json j;
    j["bits_hex"] = oss::bits_to_hex(result.bits);
    j["placements"] = placements_to_json(result.placements);
    j["flags"] = flags_to_json(result.flags);
    j["score_evaluations"] = result.score_evaluations;
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

oss::SweepPlan build_plan(const std::string& ebn0, std::uint64_t seed, std::uint64_t max_trials,
                          std::uint64_t target_errors, const std::string& decoder_name, int workers) {
    oss::SweepPlan plan;
    plan.ebn0_grid_db = parse_grid(ebn0);
    plan.seed = seed;
    plan.max_trials = max_trials;
    plan.target_errors = target_errors;
    plan.decoder = decoder_from_name(decoder_name);
    plan.workers = workers;
    return plan;
}

json bler_point_to_json(const oss::BlerPoint& p) {
    json j;
    j["ebn0_db"] = p.ebn0_db;
    j["snr_db"] = p.snr_db;
    j["trials"] = p.trials;
    j["errors"] = p.errors;
    j["bler"] = p.bler;
    j["ci_low"] = p.ci_low;
    j["ci_high"] = p.ci_high;
    j["seed"] = p.seed;
    j["stream_id"] = p.stream_id;
    return j;
}

int run_sweep_cmd(const std::string& spec_path, const oss::SweepPlan& plan, const std::string& out_path) {
    const oss::ValidatedSpec spec = oss::validate_spec(oss::load_code_spec(spec_path));
    const std::vector<oss::BlerPoint> points = oss::run_sweep(spec, plan);
    if (wants_json(out_path)) {
        json arr = json::array();
        for (const oss::BlerPoint& p : points) arr.push_back(bler_point_to_json(p));
        emit(out_path, arr.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        oss::write_sweep_csv(csv, points);
        emit(out_path, csv.str());
    }
    return 0;
}

int run_compare_cmd(const std::string& spec_path, const oss::SweepPlan& plan, const std::string& out_path) {
    const oss::ValidatedSpec spec = oss::validate_spec(oss::load_code_spec(spec_path));
    const std::vector<oss::ComparePoint> points = oss::compare_report(spec, plan);
    if (wants_json(out_path)) {
        json arr = json::array();
        for (const oss::ComparePoint& p : points) {
            json j = bler_point_to_json(p.mc);
            j["analytic"] = p.analytic_value;
            j["kind"] = p.kind == oss::AnalyticKind::Exact ? "exact" : "upper_bound";
            j["covered"] = p.covered;
            arr.push_back(std::move(j));
        }
        emit(out_path, arr.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        oss::write_compare_csv(csv, points);
        emit(out_path, csv.str());
    }
    return 0;
}

int run_gains_cmd(const std::vector<std::string>& rows, bool cited, const std::string& out_path) {
    if (rows.empty() && !cited)
        oss::fail(oss::ErrorCode::InvalidArgument, "gains needs at least one --row or --cited");

    struct OutRow {
        std::string kind;
        int n;
        int bits;
        double d_min_sq;
        double nominal;
        double effective;
        std::optional<double> neighbors_per_bit;
    };
    std::vector<OutRow> table;

    for (const std::string& row : rows) {
        const std::size_t colon = row.find(':');
        if (colon == std::string::npos)
            oss::fail(oss::ErrorCode::InvalidArgument, "--row must look like kind:N");
        const std::string kind_name = row.substr(0, colon);
        int n = 0;
        try {
            n = std::stoi(row.substr(colon + 1));
        } catch (const std::exception&) {
            oss::fail(oss::ErrorCode::InvalidArgument, "--row must look like kind:N");
        }
        oss::GainRowKind kind;
        if (kind_name == "single") kind = oss::GainRowKind::OssSingleLayer;
        else if (kind_name == "two_layer") kind = oss::GainRowKind::OssTwoLayer;
        else if (kind_name == "biorthogonal") kind = oss::GainRowKind::Biorthogonal;
        else oss::fail(oss::ErrorCode::InvalidArgument, "--row kind must be single, two_layer, or biorthogonal");

        const oss::GainReport report = oss::effective_coding_gain(kind, n);
        table.push_back({kind_name, report.n, report.bits, report.d_min_sq, report.nominal_gain_db,
                         report.effective_gain_db, report.nearest_neighbors_per_bit});
    }
    if (cited) {
        for (const oss::CitedGainRow& row : oss::cited_gain_rows()) {
            std::string family = row.family;
            for (char& c : family) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            table.push_back({family, row.n, row.bits, static_cast<double>(row.d_min_sq),
                             row.nominal_gain_db, row.effective_gain_db, std::nullopt});
        }
    }

    if (wants_json(out_path)) {
        json arr = json::array();
        for (const OutRow& r : table) {
            json j;
            j["kind"] = r.kind;
            j["n"] = r.n;
            j["bits"] = r.bits;
            j["d_min_sq"] = r.d_min_sq;
            j["nominal_gain_db"] = r.nominal;
            j["effective_gain_db"] = r.effective;
            if (r.neighbors_per_bit) j["neighbors_per_bit"] = *r.neighbors_per_bit;
            arr.push_back(std::move(j));
        }
        emit(out_path, arr.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "kind,n,bits,d_min_sq,nominal_gain_db,effective_gain_db,neighbors_per_bit\n";
        char buf[256];
        for (const OutRow& r : table) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.10g,%.10g,%.10g,", r.kind.c_str(), r.n, r.bits,
                          r.d_min_sq, r.nominal, r.effective);
            csv << buf;
            if (r.neighbors_per_bit) {
                std::snprintf(buf, sizeof(buf), "%.10g", *r.neighbors_per_bit);
                csv << buf;
            }
            csv << '\n';
        }
        emit(out_path, csv.str());
    }
    return 0;
}

int run_fbl_cmd(double snr_db, double epsilon, const std::vector<int>& n_grid,
                const std::string& candidates_path, std::uint64_t seed, std::uint64_t max_trials,
                std::uint64_t target_errors, int workers, const std::string& out_path) {
    std::vector<std::pair<std::string, oss::CodeSpec>> candidates;
    if (!candidates_path.empty()) {
        json j = json::parse(slurp(candidates_path), nullptr, false);
        if (j.is_discarded() || !j.is_array())
            oss::fail(oss::ErrorCode::InvalidArgument, "candidates file must be a JSON array");
        for (const json& entry : j) {
            if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
                !entry.contains("spec") || !entry["spec"].is_object())
                oss::fail(oss::ErrorCode::InvalidArgument,
                          "each candidate must be {\"name\": ..., \"spec\": {...}}");
            candidates.emplace_back(entry["name"].get<std::string>(),
                                    oss::code_spec_from_json(entry["spec"].dump()));
        }
    }

    const std::vector<oss::FblRow> rows =
        oss::fbl_table(n_grid, snr_db, epsilon, candidates, seed, max_trials, target_errors, workers);

    if (wants_json(out_path)) {
        json arr = json::array();
        for (const oss::FblRow& row : rows) {
            json j;
            j["n"] = row.n;
            j["approx_rate"] = row.approx_rate;
            if (row.best_spec_rate) j["best_spec_rate"] = *row.best_spec_rate;
            if (row.best_spec_name) j["best_spec"] = *row.best_spec_name;
            arr.push_back(std::move(j));
        }
        emit(out_path, arr.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        oss::write_fbl_csv(csv, rows);
        emit(out_path, csv.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal sparse superposition codes: encode, decode, and evaluate over the real AWGN channel"};
    app.require_subcommand(1);

    std::string spec_path, out_path, bits_hex, in_path;
    std::string decoder_name = "emap_ssc";
    std::string ebn0;
    std::uint64_t seed = 0, max_trials = 100000, target_errors = 100;
    int workers = 1;

    CLI::App* encode = app.add_subcommand("encode", "Encode a hex bit string into a codeword");
    encode->add_option("--spec", spec_path, "Code spec JSON file")->required();
    encode->add_option("--bits", bits_hex, "Message bits as hex, MSB first")->required();
    encode->add_option("--out", out_path, "Output JSON file (stdout if omitted)");

    CLI::App* decode = app.add_subcommand("decode", "Decode a noisy observation back to bits");
    decode->add_option("--spec", spec_path, "Code spec JSON file")->required();
    decode->add_option("--in", in_path, "Observation JSON file: {\"samples\": [...], \"sigma\": s}")->required();
    decode->add_option("--decoder", decoder_name, "emap_ssc | ordered_stats | two_stage");
    decode->add_option("--out", out_path, "Output JSON file (stdout if omitted)");

    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo BLER sweep over an Eb/N0 grid");
    sweep->add_option("--spec", spec_path, "Code spec JSON file")->required();
    sweep->add_option("--ebn0", ebn0, "Eb/N0 grid in dB as start:step:stop")->required();
    sweep->add_option("--seed", seed, "RNG seed");
    sweep->add_option("--max-trials", max_trials, "Trial budget per grid point (>= 1000)");
    sweep->add_option("--target-errors", target_errors, "Early-stop error count (>= 20)");
    sweep->add_option("--decoder", decoder_name, "emap_ssc | ordered_stats | two_stage");
    sweep->add_option("--workers", workers, "Worker threads (results are worker-count invariant)");
    sweep->add_option("--out", out_path, "Output .csv or .json file (stdout CSV if omitted)");

    CLI::App* compare = app.add_subcommand("compare", "Sweep plus the matching analytic BLER curve");
    compare->add_option("--spec", spec_path, "Code spec JSON file")->required();
    compare->add_option("--ebn0", ebn0, "Eb/N0 grid in dB as start:step:stop")->required();
    compare->add_option("--seed", seed, "RNG seed");
    compare->add_option("--max-trials", max_trials, "Trial budget per grid point (>= 1000)");
    compare->add_option("--target-errors", target_errors, "Early-stop error count (>= 20)");
    compare->add_option("--decoder", decoder_name, "emap_ssc | ordered_stats | two_stage");
    compare->add_option("--workers", workers, "Worker threads (results are worker-count invariant)");
    compare->add_option("--out", out_path, "Output .csv or .json file (stdout CSV if omitted)");

    std::vector<std::string> gain_rows;
    bool cited = false;
    CLI::App* gains = app.add_subcommand("gains", "Coding-gain table rows");
    gains->add_option("--row", gain_rows, "Construction row as kind:N; kind is single, two_layer, or biorthogonal");
    gains->add_flag("--cited", cited, "Append the built-in literature reference rows");
    gains->add_option("--out", out_path, "Output .csv or .json file (stdout CSV if omitted)");

    double snr_db = 0.0, epsilon = 1e-3;
    std::vector<int> n_grid;
    std::string candidates_path;
    CLI::App* fbl = app.add_subcommand("fbl", "Finite-blocklength rate table at fixed SNR");
    fbl->add_option("--snr-db", snr_db, "Channel SNR in dB")->required();
    fbl->add_option("--epsilon", epsilon, "Target block error rate in (0, 1)");
    fbl->add_option("--n", n_grid, "Blocklength grid (repeatable)")->required();
    fbl->add_option("--candidates", candidates_path,
                    "JSON array of {\"name\", \"spec\"} candidates searched per blocklength");
    fbl->add_option("--seed", seed, "RNG seed");
    fbl->add_option("--max-trials", max_trials, "Trial budget per candidate (>= 1000)");
    fbl->add_option("--target-errors", target_errors, "Early-stop error count (>= 20)");
    fbl->add_option("--workers", workers, "Worker threads");
    fbl->add_option("--out", out_path, "Output .csv or .json file (stdout CSV if omitted)");

    try {
        app.parse(argc, argv);
        if (*encode) return run_encode(spec_path, bits_hex, out_path);
        if (*decode) return run_decode(spec_path, in_path, decoder_name, out_path);
        if (*sweep)
            return run_sweep_cmd(spec_path,
                                 build_plan(ebn0, seed, max_trials, target_errors, decoder_name, workers),
                                 out_path);
        if (*compare)
            return run_compare_cmd(spec_path,
                                   build_plan(ebn0, seed, max_trials, target_errors, decoder_name, workers),
                                   out_path);
        if (*gains) return run_gains_cmd(gain_rows, cited, out_path);
        if (*fbl)
            return run_fbl_cmd(snr_db, epsilon, n_grid, candidates_path, seed, max_trials, target_errors,
                               workers, out_path);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const oss::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == oss::ErrorCode::QuadratureNonConvergence ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
