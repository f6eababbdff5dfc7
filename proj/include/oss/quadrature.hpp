#pragma once

#include <cstdint>
#include <functional>

namespace oss {

struct QuadratureConfig {
    double relative_tolerance = 1e-10;
    double absolute_floor = 1e-300; // convergence floor for integrals that are legitimately ~0
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval. Deterministic: the
// subdivision order is a pure function of the integrand values. Throws
// Error(QuadratureNonConvergence) when the budget is exhausted before the
// error estimate drops under max(rel_tol * |I|, absolute_floor).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config = {});

} // namespace oss
