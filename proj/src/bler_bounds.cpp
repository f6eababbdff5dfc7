#include "oss/bler_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oss/errors.hpp"
#include "oss/special_functions.hpp"

namespace oss {

namespace {

constexpr double kLnSqrt2Pi = 0.9189385332046727417803297;
constexpr double kNatWindow = 60.0; // integrate where the log-integrand is within 60 nats of its peak

// log(1 - Q(x)^k) with full relative accuracy at both extremes: when Q(x)
// is close to 1 the result tracks k * Q(-x), and when Q(x) is tiny it goes
// through expm1 toward 0.
double log_one_minus_q_pow(double k, double log_q_x) {
    const double t = k * log_q_x; // log(Q^k), <= 0
    if (t < -700.0) return 0.0;   // 1 - Q^k is 1 to double precision
    const double one_minus = -std::expm1(t);
    if (one_minus <= 0.0) {
        // Q^k rounded to 1; fall back to the first-order term k * (-log_q_x).
        return std::log(k) + std::log(-log_q_x);
    }
    return std::log(one_minus);
}

struct ScanWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

// Coarse scan for the integration window: bracket where log_f is within
// kNatWindow of its maximum. Deterministic grid, so follow-up quadrature is
// bit-stable.
template <typename LogF>
ScanWindow find_window(LogF&& log_f, double lo, double hi, int points) {
    std::vector<double> values(static_cast<std::size_t>(points));
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double t = lo + (hi - lo) * i / (points - 1);
        values[static_cast<std::size_t>(i)] = log_f(t);
        best = std::max(best, values[static_cast<std::size_t>(i)]);
    }
    ScanWindow window;
    if (!std::isfinite(best)) return window;
    const double cut = best - kNatWindow;
    int first = points, last = -1;
    for (int i = 0; i < points; ++i) {
        if (values[static_cast<std::size_t>(i)] >= cut) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    if (last < 0) return window;
    const double step = (hi - lo) / (points - 1);
    window.lo = std::max(lo, lo + (first - 1) * step);
    window.hi = std::min(hi, lo + (last + 1) * step);
    window.empty = false;
    return window;
}

} // namespace

double bler_single_layer_exact(int n, int k1, double sigma, const QuadratureConfig& config) {
    if (n < 2 || k1 < 1 || k1 >= n)
        fail(ErrorCode::InvalidArgument, "need 2 <= N and 1 <= K1 < N");
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");

    const double a = 1.0 / sigma;
    const double nk = static_cast<double>(n - k1);
    const double exponent_noise = static_cast<double>(n - k1 - 1);

    // Error probability written over the max-noise value y = sigma t:
    //   integrand(t) = [1 - Q(t - a)^K] * (N-K) phi(t) (1 - Q(t))^(N-K-1),
    // which integrates to P(error) directly (the bracket vanishes where the
    // codeword is safe), so small probabilities need no 1 - S cancellation.
    auto log_integrand = [&](double t) {
        const double log_err = log_one_minus_q_pow(static_cast<double>(k1), log_q(t - a));
        const double log_density =
            std::log(nk) - 0.5 * t * t - kLnSqrt2Pi + exponent_noise * log_q(-t);
        return log_err + log_density;
    };

    const double span = std::max(12.0, std::sqrt(2.0 * std::log(static_cast<double>(n))) + 8.0);
    const ScanWindow window = find_window(log_integrand, -(a + span), a + span, 801);
    if (window.empty) return 0.0;

    auto integrand = [&](double t) { return std::exp(log_integrand(t)); };
    const QuadratureResult integral = integrate(integrand, window.lo, window.hi, config);
    return std::clamp(integral.value, 0.0, 1.0);
}

double bler_two_layer_bound(int n, int k, double sigma, const QuadratureConfig& config) {
    if (k < 1 || 2 * k >= n)
        fail(ErrorCode::InvalidArgument, "need 1 <= K and 2K < N");
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");

    const double a = 1.0 / sigma;
    const double two_k = 2.0 * k;
    const double nk = static_cast<double>(n - 2 * k);
    const double exponent_noise = static_cast<double>(n - 2 * k - 1);

    // Support-failure probability over u = sqrt(max |noise|^2) / sigma:
    //   e1 = integral of [1 - Qh(a, u)^(2K)] * 2 (N-2K)/sqrt(2pi)
    //        * (1 - 2Q(u))^(N-2K-1) e^{-u^2/2} du on u >= 0,
    // the substitution y = sigma^2 u^2 having removed the y^{-1/2} endpoint
    // singularity of the chi-square max density.
    auto log_marcum_half = [&](double u) {
        const double diff = q_func(a - u) - q_func(u + a);
        if (diff < 0.5) return std::log1p(-diff);
        // Deep right tail: both Q's are tiny; sum them in log space.
        const double lq1 = log_q(u - a);
        const double lq2 = log_q(u + a);
        return lq1 + std::log1p(std::exp(lq2 - lq1));
    };
    auto log_integrand = [&](double u) {
        if (u <= 0.0) return -std::numeric_limits<double>::infinity();
        const double log_err = log_one_minus_q_pow(two_k, log_marcum_half(u));
        double log_noise_cdf = 0.0;
        if (exponent_noise > 0.0) {
            const double q2 = 2.0 * q_func(u);
            if (q2 >= 1.0) return -std::numeric_limits<double>::infinity();
            log_noise_cdf = exponent_noise * std::log1p(-q2);
        }
        return log_err + std::log(2.0 * nk) - kLnSqrt2Pi - 0.5 * u * u + log_noise_cdf;
    };

    const double span = std::max(12.0, std::sqrt(2.0 * std::log(static_cast<double>(n))) + 8.0);
    const ScanWindow window = find_window(log_integrand, 0.0, a + span, 801);

    double e1 = 0.0;
    if (!window.empty) {
        auto integrand = [&](double u) { return std::exp(log_integrand(u)); };
        e1 = std::clamp(integrate(integrand, window.lo, window.hi, config).value, 0.0, 1.0);
    }

    // Sign-failure probability: 1 - (1 - Q(a))^{2K}.
    const double e2 = -std::expm1(two_k * std::log1p(-q_func(a)));

    return std::clamp(e1 + e2 - e1 * e2, 0.0, 1.0);
}

double achievability_bound(int n, int k, double ebn0_linear, double delta) {
    if (n < 2 || k < 1 || k >= n) fail(ErrorCode::InvalidArgument, "need 2 <= N and 1 <= K < N");
    if (!(ebn0_linear > 0.0)) fail(ErrorCode::InvalidArgument, "ebn0_linear must be positive");
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");

    // 1/sigma^2 = (2/K) log2 C(N,K) ebn0; log2 C through lgamma keeps this
    // usable at N = 2^14 and beyond.
    const double log2_binom = (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
                              std::numbers::ln2;
    const double inv_sigma_sq = (2.0 / k) * log2_binom * ebn0_linear;

    const double t1 = std::log(static_cast<double>(k)) - 0.5 * delta * delta * inv_sigma_sq;
    const double t2 = std::log(static_cast<double>(n - k)) - 0.5 * (1.0 - delta) * (1.0 - delta) * inv_sigma_sq;
    // Each exponential bounds the probability of one failure event, so cap it
    // at 1 before combining; the raw two-term form is meaningless past that.
    const double e1 = std::min(1.0, std::exp(t1));
    const double e2 = std::min(1.0, std::exp(t2));
    return 1.0 - (1.0 - e1) * (1.0 - e2);
}

} // namespace oss
