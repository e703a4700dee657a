// SPDX-License-Identifier: Apache-2.0
#include "cogbf/projections.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cogbf {

namespace {

// Rounding can leave the final matrix a hair outside a constraint that the
// search satisfied in exact arithmetic; pull it back by a scalar factor.
void enforce_levels(ComplexMatrix& x, double power, double p_max, double interference,
                    double i_max) {
    double factor = 1.0;
    if (power > p_max) {
        factor = std::min(factor, p_max / power);
    }
    if (interference > i_max) {
        factor = std::min(factor, i_max / interference);
    }
    if (factor < 1.0) {
        x *= std::sqrt(factor) * (1.0 - 1e-15);
    }
}

}  // namespace

ComplexMatrix project_onto_F(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double mag = std::abs(a(i, j));
            out(i, j) = mag == 0.0 ? Complex(0.0, 0.0) : a(i, j) / mag;
        }
    }
    return out;
}

TraceConstraintProjector::TraceConstraintProjector(const TraceConstraintSet& set) : set_(set) {
    if (!(set.p_max > 0.0) || !(set.i_max > 0.0)) {
        throw DomainError("TraceConstraintSet: p_max and i_max must be positive");
    }
    const ComplexMatrix gram = set.h_ps.adjoint() * set.h_ps;
    HermitianEig eig = hermitian_eig(gram);
    basis_ = std::move(eig.eigenvectors);
    gram_eigs_ = eig.eigenvalues.cwiseMax(0.0);
}

bool TraceConstraintProjector::contains(const ComplexMatrix& a) const {
    return fro_sq(a) <= set_.p_max && fro_sq(set_.h_ps * a) <= set_.i_max;
}

ProjectionResult TraceConstraintProjector::project(const ComplexMatrix& a) const {
    if (a.rows() != basis_.rows()) {
        std::ostringstream msg;
        msg << "project_onto_S: expected " << basis_.rows() << " rows, got " << a.rows();
        throw DimensionError(msg.str());
    }
    ProjectionResult out;
    const double power0 = fro_sq(a);
    const double interf0 = fro_sq(set_.h_ps * a);
    if (power0 <= set_.p_max && interf0 <= set_.i_max) {
        out.x = a;
        out.was_feasible = true;
        return out;
    }

    // Power-only branch: closed form rescale.
    if (power0 > set_.p_max) {
        const double c = std::sqrt(power0 / set_.p_max);
        if (interf0 / (c * c) <= set_.i_max) {
            out.x = a / c;
            out.lambda1 = c - 1.0;
            enforce_levels(out.x, fro_sq(out.x), set_.p_max, fro_sq(set_.h_ps * out.x),
                           set_.i_max);
            return out;
        }
    }

    // In the eigenbasis of H^H H the resolvent is diagonal, so both levels
    // reduce to weighted sums over the row energies of U^H A.
    const ComplexMatrix rotated = basis_.adjoint() * a;
    const RealVector energy = rotated.rowwise().squaredNorm();
    const Eigen::Index n = energy.size();
    auto levels = [&](double l1, double l2) {
        ConstraintLevels lv;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double d = 1.0 + l1 + l2 * gram_eigs_(k);
            const double e = energy(k) / (d * d);
            lv.power += e;
            lv.interference += gram_eigs_(k) * e;
        }
        return lv;
    };
    const MultiplierSolution sol = search_two_multipliers(levels, set_.p_max, set_.i_max);
    RealVector scale(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        scale(k) = 1.0 / (1.0 + sol.lambda1 + sol.lambda2 * gram_eigs_(k));
    }
    out.x = basis_ * (scale.asDiagonal() * rotated);
    out.lambda1 = sol.lambda1;
    out.lambda2 = sol.lambda2;
    enforce_levels(out.x, fro_sq(out.x), set_.p_max, fro_sq(set_.h_ps * out.x), set_.i_max);
    return out;
}

ProjectionResult project_onto_S(const ComplexMatrix& a, const TraceConstraintSet& set) {
    return TraceConstraintProjector(set).project(a);
}

ProjectionResult project_onto_S_prime(const ComplexMatrix& a, const HybridFeasibilitySet& set) {
    const ComplexMatrix& f = set.f_rf_fixed;
    if (a.rows() != f.cols()) {
        std::ostringstream msg;
        msg << "project_onto_S_prime: expected " << f.cols() << " rows, got " << a.rows();
        throw DimensionError(msg.str());
    }
    if (set.h_ps.cols() != f.rows()) {
        throw DimensionError("project_onto_S_prime: H_ps and F_RF are incompatible");
    }
    ProjectionResult out;
    const ComplexMatrix hf = set.h_ps * f;
    const double power0 = fro_sq(f * a);
    const double interf0 = fro_sq(hf * a);
    if (power0 <= set.p_max && interf0 <= set.i_max) {
        out.x = a;
        out.was_feasible = true;
        return out;
    }
    const ComplexMatrix m_power = f.adjoint() * f;
    const ComplexMatrix m_interf = hf.adjoint() * hf;
    auto solve_at = [&](double g1, double g2) {
        ComplexMatrix sys = g1 * m_power + g2 * m_interf;
        sys.diagonal().array() += 1.0;
        return ComplexMatrix(sys.ldlt().solve(a));
    };
    auto levels = [&](double g1, double g2) {
        const ComplexMatrix x = solve_at(g1, g2);
        ConstraintLevels lv;
        lv.power = real_inner(x, m_power * x);
        lv.interference = real_inner(x, m_interf * x);
        return lv;
    };
    const MultiplierSolution sol = search_two_multipliers(levels, set.p_max, set.i_max);
    out.x = solve_at(sol.lambda1, sol.lambda2);
    out.lambda1 = sol.lambda1;
    out.lambda2 = sol.lambda2;
    enforce_levels(out.x, fro_sq(f * out.x), set.p_max, fro_sq(hf * out.x), set.i_max);
    return out;
}

}  // namespace cogbf
