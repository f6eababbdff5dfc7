// Python bindings: a thin veneer over the C++ library. Structured results
// cross as plain dicts/lists; specs cross as an opaque validated handle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oss/bler_bounds.hpp"
#include "oss/channel.hpp"
#include "oss/code_spec.hpp"
#include "oss/coding_gain.hpp"
#include "oss/decoder.hpp"
#include "oss/encoder.hpp"
#include "oss/errors.hpp"
#include "oss/normal_approx.hpp"
#include "oss/spec_json.hpp"
#include "oss/special_functions.hpp"
#include "oss/sweep.hpp"

namespace py = pybind11;

namespace {

oss::DecoderKind decoder_from_name(const std::string& name) {
    if (name == "emap_ssc") return oss::DecoderKind::EmapSsc;
    if (name == "ordered_stats") return oss::DecoderKind::OrderedStatistics;
    if (name == "two_stage") return oss::DecoderKind::TwoStageMagnitude;
    oss::fail(oss::ErrorCode::InvalidArgument,
              "decoder must be one of emap_ssc, ordered_stats, two_stage");
}

oss::GainRowKind gain_kind_from_name(const std::string& name) {
    if (name == "single") return oss::GainRowKind::OssSingleLayer;
    if (name == "two_layer") return oss::GainRowKind::OssTwoLayer;
    if (name == "biorthogonal") return oss::GainRowKind::Biorthogonal;
    oss::fail(oss::ErrorCode::InvalidArgument,
              "gain row kind must be single, two_layer, or biorthogonal");
}

oss::Bits to_bits(const std::vector<int>& raw) {
    oss::Bits bits;
    bits.reserve(raw.size());
    for (int b : raw) {
        if (b != 0 && b != 1)
            oss::fail(oss::ErrorCode::InvalidArgument, "bits must be 0 or 1");
        bits.push_back(static_cast<std::uint8_t>(b));
    }
    return bits;
}

std::vector<int> from_bits(const oss::Bits& bits) {
    return std::vector<int>(bits.begin(), bits.end());
}

py::list placements_to_py(const std::vector<oss::LayerPlacement>& placements) {
    py::list out;
    for (const auto& p : placements) {
        py::dict d;
        d["support"] = p.support;
        d["values"] = p.values;
        out.append(std::move(d));
    }
    return out;
}

py::list flags_to_py(std::uint32_t flags) {
    py::list out;
    if (flags & static_cast<std::uint32_t>(oss::DecodeFlag::DecodeOverflow))
        out.append("decode_overflow");
    if (flags & static_cast<std::uint32_t>(oss::DecodeFlag::SignSplitImbalance))
        out.append("sign_split_imbalance");
    return out;
}

py::dict decode_result_to_py(const oss::DecodeResult& dec) {
    py::dict d;
    d["bits"] = from_bits(dec.bits);
    d["placements"] = placements_to_py(dec.placements);
    d["flags"] = flags_to_py(dec.flags);
    d["score_evaluations"] = dec.score_evaluations;
    return d;
}

py::dict point_to_py(const oss::BlerPoint& p) {
    py::dict d;
    d["ebn0_db"] = p.ebn0_db;
    d["snr_db"] = p.snr_db;
    d["trials"] = p.trials;
    d["errors"] = p.errors;
    d["bler"] = p.bler;
    d["ci_low"] = p.ci_low;
    d["ci_high"] = p.ci_high;
    d["seed"] = p.seed;
    d["stream_id"] = p.stream_id;
    return d;
}

oss::SweepPlan build_plan(const std::vector<double>& ebn0_grid_db, std::uint64_t seed,
                          std::uint64_t max_trials, std::uint64_t target_errors,
                          const std::string& decoder, int workers) {
    oss::SweepPlan plan;
    plan.ebn0_grid_db = ebn0_grid_db;
    plan.seed = seed;
    plan.max_trials = max_trials;
    plan.target_errors = target_errors;
    plan.decoder = decoder_from_name(decoder);
    plan.workers = workers;
    return plan;
}

oss::ValidatedSpec build_spec(int n, const py::sequence& layers, const std::string& dictionary,
                              const std::optional<std::vector<std::vector<double>>>& rows) {
    oss::CodeSpec spec;
    spec.n = n;
    if (dictionary == "identity") spec.dictionary = oss::DictionaryKind::Identity;
    else if (dictionary == "hadamard") spec.dictionary = oss::DictionaryKind::Hadamard;
    else if (dictionary == "explicit") spec.dictionary = oss::DictionaryKind::Explicit;
    else oss::fail(oss::ErrorCode::InvalidArgument,
                   "dictionary must be identity, hadamard, or explicit");
    if (rows) spec.dictionary_matrix = *rows;
    for (const auto& item : layers) {
        const py::sequence entry = item.cast<py::sequence>();
        if (entry.size() < 2 || entry.size() > 3)
            oss::fail(oss::ErrorCode::InvalidArgument,
                      "each layer is (k, alphabet) or (k, alphabet, pool_size)");
        oss::LayerSpec layer;
        layer.k = entry[0].cast<int>();
        layer.alphabet = entry[1].cast<std::vector<double>>();
        if (entry.size() == 3 && !entry[2].is_none()) layer.pool_size = entry[2].cast<int>();
        spec.layers.push_back(std::move(layer));
    }
    return oss::validate_spec(spec);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse superposition block codes on the real-input Gaussian channel";

    py::register_exception<oss::Error>(m, "Error");

    py::class_<oss::ValidatedSpec>(m, "Spec")
        .def_property_readonly("n", &oss::ValidatedSpec::n)
        .def_property_readonly("num_layers", &oss::ValidatedSpec::num_layers)
        .def_property_readonly("total_bits", &oss::ValidatedSpec::total_bits)
        .def_property_readonly("total_sparsity", &oss::ValidatedSpec::total_sparsity)
        .def_property_readonly("rate", [](const oss::ValidatedSpec& s) { return oss::code_rate(s); })
        .def_property_readonly("symbol_energy",
                               [](const oss::ValidatedSpec& s) { return oss::average_symbol_energy(s); })
        .def("layer_bits",
             [](const oss::ValidatedSpec& s, int l) { return oss::layer_bit_budget(s, l); },
             py::arg("layer"))
        .def("layers",
             [](const oss::ValidatedSpec& s) {
                 py::list out;
                 for (const auto& info : s.layers()) {
                     py::dict d;
                     d["k"] = info.k;
                     d["alphabet"] = info.alphabet;
                     d["pool_size"] = info.pool_size;
                     d["support_bits"] = info.support_bits;
                     d["bit_budget"] = info.bit_budget;
                     out.append(std::move(d));
                 }
                 return out;
             })
        .def("to_json", [](const oss::ValidatedSpec& s) { return oss::code_spec_to_json(s.spec()); })
        .def("__repr__", [](const oss::ValidatedSpec& s) {
            return "<Spec n=" + std::to_string(s.n()) + " layers=" + std::to_string(s.num_layers()) +
                   " bits=" + std::to_string(s.total_bits()) + ">";
        });

    m.def("make_spec", &build_spec, py::arg("n"), py::arg("layers"),
          py::arg("dictionary") = "identity", py::arg("rows") = std::nullopt,
          "Validate a spec given as (n, [(k, alphabet[, pool_size]), ...], dictionary)");
    m.def("spec_from_json",
          [](const std::string& text) { return oss::validate_spec(oss::code_spec_from_json(text)); },
          py::arg("text"), "Validate a spec from its JSON description");

    m.def("encode",
          [](const oss::ValidatedSpec& spec, const std::vector<int>& bits) {
              const oss::EncodeResult enc = oss::encode(spec, to_bits(bits));
              py::dict d;
              d["codeword"] = enc.codeword;
              d["placements"] = placements_to_py(enc.placements);
              return d;
          },
          py::arg("spec"), py::arg("bits"));
    m.def("decode",
          [](const oss::ValidatedSpec& spec, const std::vector<double>& y, double sigma,
             const std::string& decoder) {
              return decode_result_to_py(
                  oss::run_decoder(decoder_from_name(decoder), spec, oss::Observation{y, sigma}));
          },
          py::arg("spec"), py::arg("y"), py::arg("sigma"), py::arg("decoder") = "emap_ssc");

    m.def("random_bits",
          [](int nbits, std::uint64_t seed, std::uint64_t stream_id) {
              oss::RngStream stream(seed, stream_id);
              return from_bits(oss::random_bits(nbits, stream));
          },
          py::arg("nbits"), py::arg("seed"), py::arg("stream_id") = 0);
    m.def("transmit",
          [](const std::vector<double>& codeword, double sigma, std::uint64_t seed,
             std::uint64_t stream_id) {
              oss::RngStream stream(seed, stream_id);
              return oss::transmit(codeword, oss::NoiseModel{sigma}, stream);
          },
          py::arg("codeword"), py::arg("sigma"), py::arg("seed"), py::arg("stream_id") = 0);
    m.def("sigma_from_ebn0_db", &oss::sigma_from_ebn0_db, py::arg("spec"), py::arg("ebn0_db"));

    m.def("bits_to_hex",
          [](const std::vector<int>& bits) { return oss::bits_to_hex(to_bits(bits)); },
          py::arg("bits"));
    m.def("hex_to_bits",
          [](const std::string& hex, int nbits) { return from_bits(oss::hex_to_bits(hex, nbits)); },
          py::arg("hex"), py::arg("nbits"));

    m.def("run_sweep",
          [](const oss::ValidatedSpec& spec, const std::vector<double>& ebn0_grid_db,
             std::uint64_t seed, std::uint64_t max_trials, std::uint64_t target_errors,
             const std::string& decoder, int workers) {
              py::list out;
              for (const auto& p : oss::run_sweep(
                       spec, build_plan(ebn0_grid_db, seed, max_trials, target_errors, decoder, workers)))
                  out.append(point_to_py(p));
              return out;
          },
          py::arg("spec"), py::arg("ebn0_grid_db"), py::arg("seed") = 0,
          py::arg("max_trials") = 100000, py::arg("target_errors") = 100,
          py::arg("decoder") = "emap_ssc", py::arg("workers") = 1,
          "Monte Carlo block error rate sweep; results do not depend on workers");
    m.def("compare_report",
          [](const oss::ValidatedSpec& spec, const std::vector<double>& ebn0_grid_db,
             std::uint64_t seed, std::uint64_t max_trials, std::uint64_t target_errors,
             const std::string& decoder, int workers) {
              py::list out;
              for (const auto& cp : oss::compare_report(
                       spec, build_plan(ebn0_grid_db, seed, max_trials, target_errors, decoder, workers))) {
                  py::dict d = point_to_py(cp.mc);
                  d["analytic_value"] = cp.analytic_value;
                  d["kind"] = cp.kind == oss::AnalyticKind::Exact ? "exact" : "upper_bound";
                  d["covered"] = cp.covered;
                  out.append(std::move(d));
              }
              return out;
          },
          py::arg("spec"), py::arg("ebn0_grid_db"), py::arg("seed") = 0,
          py::arg("max_trials") = 100000, py::arg("target_errors") = 100,
          py::arg("decoder") = "emap_ssc", py::arg("workers") = 1,
          "Sweep next to the matching analytic curve (exact or upper bound)");
    m.def("wilson_interval",
          [](std::uint64_t errors, std::uint64_t trials) {
              double low = 0.0, high = 0.0;
              oss::wilson_interval(errors, trials, low, high);
              return py::make_tuple(low, high);
          },
          py::arg("errors"), py::arg("trials"));

    m.def("bler_single_layer_exact",
          [](int n, int k, double sigma) { return oss::bler_single_layer_exact(n, k, sigma); },
          py::arg("n"), py::arg("k"), py::arg("sigma"));
    m.def("bler_two_layer_bound",
          [](int n, int k, double sigma) { return oss::bler_two_layer_bound(n, k, sigma); },
          py::arg("n"), py::arg("k"), py::arg("sigma"));
    m.def("achievability_bound", &oss::achievability_bound, py::arg("n"), py::arg("k"),
          py::arg("ebn0_linear"), py::arg("delta"));
    m.def("normal_approx_rate", &oss::normal_approx_rate, py::arg("snr_linear"), py::arg("n"),
          py::arg("epsilon"));
    m.def("awgn_capacity", &oss::awgn_capacity, py::arg("snr_linear"));

    m.def("effective_coding_gain",
          [](const std::string& kind, int n) {
              const oss::GainReport r = oss::effective_coding_gain(gain_kind_from_name(kind), n);
              py::dict d;
              d["kind"] = kind;
              d["n"] = r.n;
              d["bits"] = r.bits;
              d["d_min_sq"] = r.d_min_sq;
              d["nominal_gain_db"] = r.nominal_gain_db;
              d["effective_gain_db"] = r.effective_gain_db;
              d["nearest_neighbors_per_bit"] = r.nearest_neighbors_per_bit;
              return d;
          },
          py::arg("kind"), py::arg("n"),
          "Coding gain row for kind in {single, two_layer, biorthogonal}");
    m.def("min_distance_exhaustive",
          [](const oss::ValidatedSpec& spec, int threads) {
              const oss::MinDistanceProfile prof = oss::min_distance_exhaustive(spec, threads);
              py::dict d;
              d["d_min_sq"] = prof.d_min_sq;
              d["mean_nearest_neighbors"] = prof.mean_nearest_neighbors;
              d["codebook_size"] = prof.codebook_size;
              return d;
          },
          py::arg("spec"), py::arg("threads") = 0);

    m.def("q_func", &oss::q_func, py::arg("x"));
    m.def("log_q", &oss::log_q, py::arg("x"));
    m.def("q_func_inv", &oss::q_func_inv, py::arg("p"));
    m.def("marcum_q_half", &oss::marcum_q_half, py::arg("a"), py::arg("b"));
}
