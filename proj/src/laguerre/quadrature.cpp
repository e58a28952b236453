#include "entvar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entvar {

GaussLegendreRule GaussLegendreRule::make(int order) {
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    if (order == 1) return {{0.0}, {2.0}};
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    return rule;
}

namespace {

void append_panel(const GaussLegendreRule& rule, double a, double b, CompositeRule& out) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.nodes.push_back(mid + half * rule.nodes[i]);
        out.weights.push_back(half * rule.weights[i]);
    }
}

}  // namespace

CompositeRule graded_rule(const GaussLegendreRule& rule, double upper, int grading_depth, int uniform_panels) {
    if (upper <= 1.0 || grading_depth < 1 || uniform_panels < 1) {
        throw std::invalid_argument("graded_rule: need upper > 1 and positive panel counts");
    }
    CompositeRule out;
    append_panel(rule, 0.0, std::ldexp(1.0, -grading_depth), out);
    for (int i = grading_depth - 1; i >= 0; --i) {
        append_panel(rule, std::ldexp(1.0, -(i + 1)), std::ldexp(1.0, -i), out);
    }
    const double h = (upper - 1.0) / uniform_panels;
    for (int p = 0; p < uniform_panels; ++p) {
        append_panel(rule, 1.0 + p * h, p + 1 == uniform_panels ? upper : 1.0 + (p + 1) * h, out);
    }
    return out;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t mid = values.size() / 2;
    return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

QuadratureResult refine_until_converged(double upper, const RefinementControl& control,
                                        const std::function<double(const CompositeRule&)>& estimate,
                                        double tail_bound) {
    const GaussLegendreRule rule = GaussLegendreRule::make(control.gauss_order);
    int depth = control.initial_grading_depth;
    int panels = control.initial_uniform_panels;

    QuadratureResult result;
    CompositeRule composite = graded_rule(rule, upper, depth, panels);
    double previous = estimate(composite);
    result.value = previous;
    result.nodes_per_axis = static_cast<int>(composite.nodes.size());
    for (int level = 1; level <= control.max_refinements; ++level) {
        depth *= 2;
        panels *= 2;
        composite = graded_rule(rule, upper, depth, panels);
        const double current = estimate(composite);
        const double diff = std::abs(current - previous);
        result.value = current;
        result.refinements = level;
        result.nodes_per_axis = static_cast<int>(composite.nodes.size());
        result.error_estimate = diff + tail_bound;
        const double scale = std::max(std::abs(current), control.absolute_floor);
        if (diff <= control.relative_tolerance * scale) {
            result.converged = true;
            return result;
        }
        previous = current;
    }
    return result;
}

}  // namespace entvar
