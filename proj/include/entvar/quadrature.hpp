#pragma once

#include <functional>
#include <span>
#include <vector>

namespace entvar {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussLegendreRule make(int order);
};

/// Nodes and weights of a composite rule over a list of panels.
struct CompositeRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Panels covering [0, upper]: dyadically graded panels [2^-(i+1), 2^-i]
/// for i < grading_depth plus [0, 2^-grading_depth] on [0, 1], and
/// `uniform_panels` equal panels on [1, upper].
CompositeRule graded_rule(const GaussLegendreRule& rule, double upper, int grading_depth, int uniform_panels);

/// Order-independent, deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

struct QuadratureResult {
    double value = 0.0;
    /// Difference between the last two refinements plus a tail bound.
    double error_estimate = 0.0;
    int refinements = 0;
    int nodes_per_axis = 0;
    bool converged = false;
};

struct RefinementControl {
    double relative_tolerance = 1e-9;
    double absolute_floor = 1e-14;
    int gauss_order = 20;
    int initial_grading_depth = 8;
    int initial_uniform_panels = 16;
    int max_refinements = 6;
};

/// Repeatedly evaluates `estimate(rule)` on doubling panel layouts until two
/// successive results agree to the relative tolerance.
QuadratureResult refine_until_converged(double upper, const RefinementControl& control,
                                        const std::function<double(const CompositeRule&)>& estimate,
                                        double tail_bound = 0.0);

}  // namespace entvar
