#pragma once

#include <string>

#include "oss/code_spec.hpp"

namespace oss {

// JSON shape:
//   {"n": 48, "dictionary": "identity",
//    "layers": [{"k": 2, "alphabet": [-1, 1]},
//               {"k": 2, "alphabet": [-2, 2], "pool_size": 40}]}
// dictionary is "identity", "hadamard", or {"explicit": [[...], ...]}.
CodeSpec code_spec_from_json(const std::string& text);
CodeSpec load_code_spec(const std::string& path);
std::string code_spec_to_json(const CodeSpec& spec);

} // namespace oss
