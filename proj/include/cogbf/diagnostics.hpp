// SPDX-License-Identifier: Apache-2.0
//
// Empirical convergence audit for the ADMM solvers. The convergence theorem
// assumes a bounded multiplier sequence with square-summable increments and
// concludes that the primal residual vanishes; this module checks those
// conditions on a recorded trace.
//
// The thresholds are flagging heuristics, not guarantees:
//   bounded_multiplier: max ||Lambda_n|| <= 1e3 * median ||Lambda_n|| and,
//                       for series of 10 or more, the final norm is at most
//                       1.05x the norm at 90% of the run (no sustained growth)
//   summable_diffs:     the last decile of iterations carries <= 5% of
//                       sum ||Lambda_n - Lambda_{n-1}||^2
//   residual_vanishing: final primal residual <= the solver's tolerance
#pragma once

#include <vector>

#include "cogbf/admm_trace.hpp"

namespace cogbf {

struct ConvergenceAudit {
    std::vector<double> multiplier_norm_series;
    std::vector<double> multiplier_diff_sq_cumsum;
    std::vector<double> primal_residual_series;
    std::vector<double> lagrangian_series;
    bool bounded_multiplier = false;
    bool summable_diffs = false;
    bool residual_vanishing = false;

    bool all_true() const { return bounded_multiplier && summable_diffs && residual_vanishing; }
};

inline constexpr double kBoundedMedianFactor = 1e3;
inline constexpr double kGrowthLimit = 1.05;
inline constexpr double kLastDecileShare = 0.05;

/// Pure function of the trace. Throws DomainError for an empty trace.
ConvergenceAudit audit_convergence(const AdmmTrace& trace);

}  // namespace cogbf
