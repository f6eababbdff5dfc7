#include "oss/spec_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oss/errors.hpp"

namespace oss {

namespace {

using nlohmann::json;

int require_int(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        fail(ErrorCode::InvalidArgument, std::string("spec field '") + field + "' must be an integer");
    return j[field].get<int>();
}

std::vector<double> require_number_array(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        fail(ErrorCode::InvalidArgument, std::string("spec field '") + field + "' must be an array");
    std::vector<double> out;
    out.reserve(j[field].size());
    for (const json& v : j[field]) {
        if (!v.is_number())
            fail(ErrorCode::InvalidArgument, std::string("spec field '") + field + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

CodeSpec code_spec_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::InvalidArgument, "spec is not valid JSON");
    if (!j.is_object()) fail(ErrorCode::InvalidArgument, "spec must be a JSON object");

    CodeSpec spec;
    spec.n = require_int(j, "n");

    if (!j.contains("dictionary")) {
        spec.dictionary = DictionaryKind::Identity;
    } else if (j["dictionary"].is_string()) {
        const std::string kind = j["dictionary"].get<std::string>();
        if (kind == "identity") {
            spec.dictionary = DictionaryKind::Identity;
        } else if (kind == "hadamard") {
            spec.dictionary = DictionaryKind::Hadamard;
        } else {
            fail(ErrorCode::InvalidArgument, "dictionary must be 'identity', 'hadamard', or {\"explicit\": rows}");
        }
    } else if (j["dictionary"].is_object() && j["dictionary"].contains("explicit")) {
        const json& rows = j["dictionary"]["explicit"];
        if (!rows.is_array()) fail(ErrorCode::InvalidArgument, "explicit dictionary must be an array of rows");
        spec.dictionary = DictionaryKind::Explicit;
        for (const json& row : rows) {
            if (!row.is_array()) fail(ErrorCode::InvalidArgument, "explicit dictionary rows must be arrays");
            std::vector<double> r;
            r.reserve(row.size());
            for (const json& v : row) {
                if (!v.is_number()) fail(ErrorCode::InvalidArgument, "explicit dictionary entries must be numbers");
                r.push_back(v.get<double>());
            }
            spec.dictionary_matrix.push_back(std::move(r));
        }
    } else {
        fail(ErrorCode::InvalidArgument, "dictionary must be 'identity', 'hadamard', or {\"explicit\": rows}");
    }

    if (!j.contains("layers") || !j["layers"].is_array() || j["layers"].empty())
        fail(ErrorCode::InvalidArgument, "spec field 'layers' must be a non-empty array");
    for (const json& jl : j["layers"]) {
        if (!jl.is_object()) fail(ErrorCode::InvalidArgument, "each layer must be a JSON object");
        LayerSpec layer;
        layer.k = require_int(jl, "k");
        layer.alphabet = require_number_array(jl, "alphabet");
        if (jl.contains("pool_size")) {
            if (!jl["pool_size"].is_number_integer())
                fail(ErrorCode::InvalidArgument, "layer field 'pool_size' must be an integer");
            layer.pool_size = jl["pool_size"].get<int>();
        }
        spec.layers.push_back(std::move(layer));
    }
    return spec;
}

CodeSpec load_code_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return code_spec_from_json(buf.str());
}

std::string code_spec_to_json(const CodeSpec& spec) {
    json j;
    j["n"] = spec.n;
    switch (spec.dictionary) {
        case DictionaryKind::Identity: j["dictionary"] = "identity"; break;
        case DictionaryKind::Hadamard: j["dictionary"] = "hadamard"; break;
        case DictionaryKind::Explicit: j["dictionary"] = json{{"explicit", spec.dictionary_matrix}}; break;
    }
    j["layers"] = json::array();
    for (const LayerSpec& layer : spec.layers) {
        json jl;
        jl["k"] = layer.k;
        jl["alphabet"] = layer.alphabet;
        if (layer.pool_size) jl["pool_size"] = *layer.pool_size;
        j["layers"].push_back(std::move(jl));
    }
    return j.dump(2);
}

} // namespace oss
