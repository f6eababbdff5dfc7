#pragma once

namespace oss {

// Finite-blocklength normal approximation for the real AWGN channel:
//   R(N, eps) = C - sqrt(V/N) Q^{-1}(eps) + log2(N) / (2N)
// with C = (1/2) log2(1 + snr) and dispersion
// V = (snr (snr + 2) / (2 (snr + 1)^2)) log2(e)^2.
// snr is linear and positive; eps must lie in (0, 1).
double normal_approx_rate(double snr_linear, int n, double epsilon);

// Shannon capacity (1/2) log2(1 + snr), bits per real dimension.
double awgn_capacity(double snr_linear);

} // namespace oss
