#include "oss/dictionary.hpp"

#include <cmath>

#include "oss/errors.hpp"

namespace oss {

void fwht(std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        fail(ErrorCode::HadamardOrderInvalid, "transform length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

namespace {

std::vector<double> hadamard_transform(const ValidatedSpec& spec, std::vector<double> v) {
    fwht(v);
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n()));
    for (double& x : v) x *= scale;
    return v;
}

std::vector<double> matvec(const std::vector<std::vector<double>>& u, const std::vector<double>& x, bool transpose) {
    const std::size_t n = x.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = u[r];
        if (transpose) {
            const double xr = x[r];
            for (std::size_t c = 0; c < n; ++c) out[c] += row[c] * xr;
        } else {
            double acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += row[c] * x[c];
            out[r] = acc;
        }
    }
    return out;
}

} // namespace

std::vector<double> apply_dictionary(const ValidatedSpec& spec, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != spec.n())
        fail(ErrorCode::DimensionMismatch, "vector length does not match N");
    switch (spec.spec().dictionary) {
    case DictionaryKind::Identity:
        return x;
    case DictionaryKind::Hadamard:
        // Sylvester Hadamard scaled by 1/sqrt(N) is symmetric and involutive.
        return hadamard_transform(spec, x);
    case DictionaryKind::Explicit:
        return matvec(spec.spec().dictionary_matrix, x, /*transpose=*/false);
    }
    fail(ErrorCode::InvalidArgument, "unknown dictionary kind");
}

std::vector<double> invert_dictionary(const ValidatedSpec& spec, const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != spec.n())
        fail(ErrorCode::DimensionMismatch, "vector length does not match N");
    switch (spec.spec().dictionary) {
    case DictionaryKind::Identity:
        return y;
    case DictionaryKind::Hadamard:
        return hadamard_transform(spec, y);
    case DictionaryKind::Explicit:
        return matvec(spec.spec().dictionary_matrix, y, /*transpose=*/true);
    }
    fail(ErrorCode::InvalidArgument, "unknown dictionary kind");
}

} // namespace oss
