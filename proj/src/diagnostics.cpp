// SPDX-License-Identifier: Apache-2.0
#include "cogbf/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "cogbf/errors.hpp"

namespace cogbf {

namespace {

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
    const double upper = v[n / 2];
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2));
    return 0.5 * (lower + upper);
}

}  // namespace

ConvergenceAudit audit_convergence(const AdmmTrace& trace) {
    if (trace.empty()) {
        throw DomainError("audit_convergence: empty trace");
    }
    ConvergenceAudit a;
    const std::size_t n = trace.size();
    a.multiplier_norm_series.reserve(n);
    a.multiplier_diff_sq_cumsum.reserve(n);
    a.primal_residual_series.reserve(n);
    a.lagrangian_series.reserve(n);
    double cumsum = 0.0;
    for (const auto& rec : trace.iterations) {
        cumsum += rec.multiplier_change_sq;
        a.multiplier_norm_series.push_back(rec.multiplier_norm);
        a.multiplier_diff_sq_cumsum.push_back(cumsum);
        a.primal_residual_series.push_back(rec.primal_residual);
        a.lagrangian_series.push_back(rec.lagrangian);
    }

    const auto& norms = a.multiplier_norm_series;
    const double peak = *std::max_element(norms.begin(), norms.end());
    bool bounded = peak <= kBoundedMedianFactor * median(norms);
    if (n >= 10) {
        const std::size_t at90 = (9 * n) / 10 - 1;
        if (norms.back() > kGrowthLimit * norms[at90]) {
            bounded = false;
        }
    }
    a.bounded_multiplier = bounded;

    const std::size_t tail = std::max<std::size_t>(1, (n + 9) / 10);
    const double before_tail = n > tail ? a.multiplier_diff_sq_cumsum[n - tail - 1] : 0.0;
    const double total = a.multiplier_diff_sq_cumsum.back();
    a.summable_diffs = total <= 0.0 || (total - before_tail) <= kLastDecileShare * total;

    a.residual_vanishing = trace.iterations.back().primal_residual <= trace.primal_tolerance;
    return a;
}

}  // namespace cogbf
