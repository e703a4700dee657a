// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cogbf {

enum class Termination { TolerancesMet, MaxIterations };

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

/// Quantities recorded after every outer ADMM iteration.
struct IterationRecord {
    double primal_residual = 0.0;       ///< ||aux_n - analog_n * digital_n||_F
    double aux_change = 0.0;            ///< ||aux_n - aux_{n-1}||_F
    double lagrangian = 0.0;            ///< augmented Lagrangian at the new iterate
    double multiplier_norm = 0.0;       ///< ||multiplier_n||_F
    double multiplier_change_sq = 0.0;  ///< ||multiplier_n - multiplier_{n-1}||_F^2
    int inner_iterations = 0;           ///< projected-gradient steps (0 for closed-form solvers)
};

struct AdmmTrace {
    std::vector<IterationRecord> iterations;
    Termination termination = Termination::MaxIterations;
    double change_tolerance = 0.0;
    double primal_tolerance = 0.0;

    std::size_t size() const { return iterations.size(); }
    bool empty() const { return iterations.empty(); }
    int total_inner_iterations() const;
};

}  // namespace cogbf
