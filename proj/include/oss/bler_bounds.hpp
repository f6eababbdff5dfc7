#pragma once

#include "oss/quadrature.hpp"

namespace oss {

// Exact block error probability of the single-layer code with a unit
// amplitude and K_1 nonzeros under ordered-statistics decoding: one minus
// the probability that every signal coordinate exceeds the largest noise
// coordinate. Integrated directly in error form (the integrand is the
// max-noise density times the probability some signal coordinate falls
// below it), assembled in log domain, so values down to ~1e-12 keep full
// relative accuracy.
double bler_single_layer_exact(int n, int k1, double sigma, const QuadratureConfig& config = {});

// Upper bound on the two-layer {+1}/{-1}, K_1 = K_2 = K block error under
// two-stage magnitude decoding: 1 - P(correct support) * P(no sign flip),
// with the support term integrated over the max |noise|^2 density and the
// sign term (1 - Q(1/sigma))^{2K}.
double bler_two_layer_bound(int n, int k, double sigma, const QuadratureConfig& config = {});

// Chernoff/Bernoulli achievability bound for the K-sparse unit-amplitude
// code under threshold decoding at 1 - delta:
//   K e^{-delta^2/(2s2)} + (N-K) e^{-(1-delta)^2/(2s2)}
//     - K (N-K) e^{-(delta^2 + (1-delta)^2)/(2s2)}
// where 1/s2 = (2/K) log2 C(N,K) ebn0_linear. May exceed 1; it is a bound.
double achievability_bound(int n, int k, double ebn0_linear, double delta);

} // namespace oss
