// SPDX-License-Identifier: Apache-2.0
//
// Two-multiplier search shared by the constrained projections and the
// dual water-filling solver.
//
// Every caller minimizes a convex objective subject to a power constraint
// p(x) <= p_max and an interference constraint i(x) <= i_max. For fixed
// multipliers (l1, l2) the Lagrangian minimizer is known in closed form, and
// the constraint levels evaluated there are the negated partial derivatives
// of the (concave) dual function. Each level is therefore nonincreasing in
// its own multiplier, and after the inner maximization over l2 the power
// level is nonincreasing in l1. That makes a nested bracketed search (outer
// on l1, inner on l2) provably convergent.
#pragma once

#include <functional>

namespace cogbf {

struct ConstraintLevels {
    double power = 0.0;
    double interference = 0.0;
};

struct MultiplierSolution {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    ConstraintLevels levels;
    int evaluations = 0;
};

struct MultiplierSearchOptions {
    /// Smallest admissible lambda1 (the digital solver needs a positive floor).
    double lambda1_floor = 0.0;
    /// Relative bracket width at which the search stops.
    double rel_tol = 1e-14;
    /// Stop early once the feasible end is within this relative gap of the limit.
    double level_tol = 1e-13;
    int max_doublings = 200;
    int max_bisections = 400;
};

using LevelFunction = std::function<ConstraintLevels(double lambda1, double lambda2)>;

/// Finds multipliers satisfying both constraints with complementary
/// slackness. The returned point always lies on the feasible side of each
/// active bracket. Throws NumericalError when a bracket cannot be found.
MultiplierSolution search_two_multipliers(const LevelFunction& levels, double p_max,
                                          double i_max,
                                          const MultiplierSearchOptions& options = {});

}  // namespace cogbf
