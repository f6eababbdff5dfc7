#include "oss/normal_approx.hpp"

#include <cmath>

#include "oss/errors.hpp"
#include "oss/special_functions.hpp"

namespace oss {

double awgn_capacity(double snr_linear) {
    if (!(snr_linear > 0.0)) fail(ErrorCode::DomainError, "snr must be positive");
    return 0.5 * std::log2(1.0 + snr_linear);
}

double normal_approx_rate(double snr_linear, int n, double epsilon) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "blocklength must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorCode::DomainError, "epsilon must lie in (0, 1)");
    const double capacity = awgn_capacity(snr_linear);
    const double log2e = 1.4426950408889634074;
    const double s1 = snr_linear + 1.0;
    const double dispersion = 0.5 * snr_linear * (snr_linear + 2.0) / (s1 * s1) * log2e * log2e;
    const double nd = static_cast<double>(n);
    return capacity - std::sqrt(dispersion / nd) * q_func_inv(epsilon) + std::log2(nd) / (2.0 * nd);
}

} // namespace oss
