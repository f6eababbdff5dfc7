#pragma once

#include <vector>

#include "oss/code_spec.hpp"

namespace oss {

// c = U x for the spec's dictionary. Identity copies, Hadamard runs a fast
// Walsh-Hadamard transform scaled by 1/sqrt(N), Explicit multiplies by the
// stored matrix.
std::vector<double> apply_dictionary(const ValidatedSpec& spec, const std::vector<double>& x);

// z = U^T y; exact inverse up to the orthonormality tolerance.
std::vector<double> invert_dictionary(const ValidatedSpec& spec, const std::vector<double>& y);

// In-place unnormalized Walsh-Hadamard transform; n must be a power of two.
void fwht(std::vector<double>& v);

} // namespace oss
