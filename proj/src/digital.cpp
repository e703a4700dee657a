// SPDX-License-Identifier: Apache-2.0
#include "cogbf/digital.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cogbf/multiplier_search.hpp"

namespace cogbf {

namespace {

constexpr double kLambdaFloor = 1e-12;
constexpr double kGapTol = 1e-6;

// Water-filling for fixed multipliers, expressed in the eigenbasis U of
// H_ps^H H_ps where B^{-1/2} is diagonal.
struct DualPoint {
    ComplexMatrix v;     // right singular vectors (U coordinates), columns
    RealVector power;    // water-filling levels per column
    RealVector gain;     // squared singular values per column
    RealVector d;        // diagonal of B^{-1/2}
};

class DualWaterFilling {
public:
    DualWaterFilling(const ComplexMatrix& whitened_rot, const RealVector& gram_eigs)
        : hw_(whitened_rot), g_(gram_eigs) {
        if (hw_.rows() >= hw_.cols()) {
            hw_gram_ = hw_.adjoint() * hw_;
        }
    }

    DualPoint maximize(double l1, double l2) const {
        DualPoint pt;
        const Eigen::Index t = hw_.cols();
        const Eigen::Index r = hw_.rows();
        pt.d.resize(t);
        for (Eigen::Index j = 0; j < t; ++j) {
            pt.d(j) = 1.0 / std::sqrt(l1 + l2 * g_(j));
        }
        if (r < t) {
            const ComplexMatrix m = hw_ * pt.d.asDiagonal();
            // Right singular vectors from the smaller left Gram matrix.
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m * m.adjoint());
            const RealVector s2 = es.eigenvalues().cwiseMax(0.0);
            pt.v = ComplexMatrix::Zero(t, r);
            pt.gain = RealVector::Zero(r);
            for (Eigen::Index k = 0; k < r; ++k) {
                if (s2(k) > 0.0) {
                    pt.v.col(k) = m.adjoint() * es.eigenvectors().col(k) / std::sqrt(s2(k));
                    pt.gain(k) = s2(k);
                }
            }
        } else {
            // m^H m = D (H^H H) D with the Gram matrix cached.
            const ComplexMatrix mm = pt.d.asDiagonal() * hw_gram_ * pt.d.asDiagonal();
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mm);
            pt.v = es.eigenvectors();
            pt.gain = es.eigenvalues().cwiseMax(0.0);
        }
        const double level = 1.0 / std::numbers::ln2;
        pt.power.resize(pt.gain.size());
        for (Eigen::Index k = 0; k < pt.gain.size(); ++k) {
            pt.power(k) = pt.gain(k) > 0.0 ? std::max(0.0, level - 1.0 / pt.gain(k)) : 0.0;
        }
        return pt;
    }

    ConstraintLevels levels(double l1, double l2) const {
        const DualPoint pt = maximize(l1, l2);
        ConstraintLevels lv;
        for (Eigen::Index k = 0; k < pt.power.size(); ++k) {
            if (pt.power(k) <= 0.0) {
                continue;
            }
            double pw = 0.0;
            double in = 0.0;
            for (Eigen::Index j = 0; j < pt.d.size(); ++j) {
                const double w = pt.d(j) * pt.d(j) * std::norm(pt.v(j, k));
                pw += w;
                in += g_(j) * w;
            }
            lv.power += pt.power(k) * pw;
            lv.interference += pt.power(k) * in;
        }
        return lv;
    }

private:
    ComplexMatrix hw_;
    ComplexMatrix hw_gram_;
    RealVector g_;
};

}  // namespace

double covariance_objective(const ScenarioChannels& scenario, const ComplexMatrix& f_tilde) {
    const ComplexMatrix q = scenario.interference_plus_noise();
    const ComplexMatrix signal = scenario.h_ss * f_tilde * scenario.h_ss.adjoint();
    return log2_det_hpd(q + signal) - log2_det_hpd(q);
}

DigitalSolution solve_digital_precoder(const ScenarioChannels& scenario) {
    const SystemConfig& cfg = scenario.config;
    DigitalSolution sol;
    sol.q_matrix = scenario.interference_plus_noise();
    sol.whitened_channel = psd_power(sol.q_matrix, PsdExponent::MinusHalf) * scenario.h_ss;

    const HermitianEig gram = hermitian_eig(scenario.h_ps.adjoint() * scenario.h_ps);
    const RealVector g = gram.eigenvalues.cwiseMax(0.0);
    const ComplexMatrix& u = gram.eigenvectors;
    const DualWaterFilling wf(sol.whitened_channel * u, g);

    MultiplierSearchOptions opt;
    opt.lambda1_floor = kLambdaFloor;
    const MultiplierSolution ms = search_two_multipliers(
        [&wf](double l1, double l2) { return wf.levels(l1, l2); }, cfg.p_max, cfg.i_max, opt);
    sol.lambda1 = ms.lambda1;
    sol.lambda2 = ms.lambda2;

    const DualPoint pt = wf.maximize(ms.lambda1, ms.lambda2);
    ComplexMatrix inner = ComplexMatrix::Zero(u.cols(), u.cols());
    double dual_value = cfg.p_max * ms.lambda1 + cfg.i_max * ms.lambda2;
    for (Eigen::Index k = 0; k < pt.power.size(); ++k) {
        if (pt.power(k) > 0.0) {
            const ComplexVector col = pt.d.asDiagonal() * pt.v.col(k);
            inner += pt.power(k) * col * col.adjoint();
            dual_value += std::log2(1.0 + pt.gain(k) * pt.power(k)) - pt.power(k);
        }
    }
    sol.f_tilde = u * inner * u.adjoint();
    sol.f_tilde = 0.5 * (sol.f_tilde + sol.f_tilde.adjoint());
    sol.achieved_objective =
        pt.power.size() > 0 && pt.power.maxCoeff() > 0.0 ? covariance_objective(scenario, sol.f_tilde)
                                                         : 0.0;
    sol.duality_gap = dual_value - sol.achieved_objective;
    if (!(std::abs(sol.duality_gap) <= kGapTol * std::max(1.0, sol.achieved_objective))) {
        std::ostringstream msg;
        msg << "solve_digital_precoder: duality gap " << sol.duality_gap << " at multipliers ("
            << ms.lambda1 << ", " << ms.lambda2 << "), objective " << sol.achieved_objective;
        throw NumericalError(msg.str());
    }

    const HermitianEig fe = hermitian_eig(sol.f_tilde);
    const double top = std::max(fe.eigenvalues(0), 0.0);
    Eigen::Index rank = 0;
    while (rank < fe.eigenvalues.size() && fe.eigenvalues(rank) > 1e-12 * std::max(top, 1e-300)) {
        ++rank;
    }
    sol.f_d = fe.eigenvectors.leftCols(rank) *
              fe.eigenvalues.head(rank).cwiseSqrt().asDiagonal();
    return sol;
}

ComplexMatrix rank_capped_precoder(const DigitalSolution& solution, int columns) {
    ComplexMatrix out = ComplexMatrix::Zero(solution.f_d.rows(), columns);
    const Eigen::Index keep = std::min<Eigen::Index>(columns, solution.f_d.cols());
    out.leftCols(keep) = solution.f_d.leftCols(keep);
    return out;
}

ComplexMatrix digital_mmse_postcoder(const ScenarioChannels& scenario,
                                     const ComplexMatrix& precoder) {
    if (precoder.rows() != scenario.h_ss.cols()) {
        throw DimensionError("digital_mmse_postcoder: precoder row count != T_s");
    }
    const ComplexMatrix hf = scenario.h_ss * precoder;
    const ComplexMatrix cov = hf * hf.adjoint() + scenario.interference_plus_noise();
    return solve_linear(cov, hf);
}

}  // namespace cogbf
