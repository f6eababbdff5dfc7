#include "oss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "oss/errors.hpp"

namespace oss {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (QUADPACK's QK15 constants).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWeightsKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWeightsGauss[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    std::uint64_t order; // insertion index: deterministic heap tie-breaking
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.order > rhs.order;
    }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b, std::uint64_t order) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kNodes[i];
        const double lo = f(center - offset);
        const double hi = f(center + offset);
        const double pair = (i == 7) ? lo : lo + hi; // center node counted once
        kronrod += kWeightsKronrod[i] * pair;
        if (i % 2 == 1) gauss += kWeightsGauss[i / 2] * pair;
    }
    Panel panel;
    panel.a = a;
    panel.b = b;
    panel.value = kronrod * half;
    panel.error = std::abs((kronrod - gauss) * half);
    panel.order = order;
    return panel;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        fail(ErrorCode::InvalidArgument, "integration endpoints must be finite");
    if (a == b) return {0.0, 0.0, 0};

    std::uint64_t order = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    queue.push(evaluate_panel(f, a, b, order++));

    double total_value = queue.top().value;
    double total_error = queue.top().error;
    int subdivisions = 0;

    auto tolerance = [&](double value) {
        return std::max(config.relative_tolerance * std::abs(value), config.absolute_floor);
    };

    while (total_error > tolerance(total_value)) {
        if (subdivisions >= config.max_subdivisions)
            fail(ErrorCode::QuadratureNonConvergence, "subdivision budget exhausted");
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b))
            fail(ErrorCode::QuadratureNonConvergence, "interval no longer splittable at double precision");
        Panel left = evaluate_panel(f, worst.a, mid, order++);
        Panel right = evaluate_panel(f, mid, worst.b, order++);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }

    QuadratureResult result;
    result.value = total_value;
    result.error_estimate = total_error;
    result.subdivisions = subdivisions;
    return result;
}

} // namespace oss
