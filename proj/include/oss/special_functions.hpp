#pragma once

namespace oss {

// Gaussian tail Q(x) = P(N(0,1) > x), computed through erfc.
double q_func(double x);

// log Q(x), finite for all representable x (asymptotic expansion once erfc
// underflows, around x ~ 38).
double log_q(double x);

// Inverse of q_func on (0, 1); accurate to ~1e-15 after Newton polish.
double q_func_inv(double p);

// Marcum Q_{1/2}(a, b) = Q(b - a) + Q(b + a), the half-order special case
// (survival of |N(a,1)| past b). Requires a, b >= 0.
double marcum_q_half(double a, double b);

} // namespace oss
