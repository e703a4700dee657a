// SPDX-License-Identifier: Apache-2.0
#include "cogbf/metrics.hpp"

#include <algorithm>

namespace cogbf {

namespace {

struct ColumnSpace {
    ComplexMatrix basis;
    int rank = 0;
};

ColumnSpace column_space(const ComplexMatrix& w) {
    ColumnSpace cs;
    Eigen::JacobiSVD<ComplexMatrix> svd(w, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    const double top = s.size() > 0 ? s(0) : 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (top > 0.0 && s(k) > 1e-10 * top) {
            ++cs.rank;
        }
    }
    cs.basis = svd.matrixU().leftCols(cs.rank);
    return cs;
}

}  // namespace

int postcoder_rank(const ComplexMatrix& w) {
    return column_space(w).rank;
}

double spectral_efficiency(const ScenarioChannels& scenario, const ComplexMatrix& f,
                           const ComplexMatrix& w) {
    if (f.rows() != scenario.h_ss.cols() || w.rows() != scenario.h_ss.rows()) {
        throw DimensionError("spectral_efficiency: precoder/post-coder shapes do not match H_ss");
    }
    const ColumnSpace cs = column_space(w);
    if (cs.rank == 0) {
        return 0.0;
    }
    // The value depends only on span(W); an orthonormal basis keeps W^H Q W
    // well conditioned when the columns of W are nearly dependent.
    const ComplexMatrix& wb = cs.basis;
    const ComplexMatrix rn = wb.adjoint() * scenario.interference_plus_noise() * wb;
    const ComplexMatrix sig = wb.adjoint() * scenario.h_ss * f;
    const double value = log2_det_hpd(rn + sig * sig.adjoint()) - log2_det_hpd(rn);
    return std::max(value, 0.0);
}

LinkReport audit(const ScenarioChannels& scenario, const ComplexMatrix& f) {
    LinkReport r;
    r.tx_power = fro_sq(f);
    r.interference_power = fro_sq(scenario.h_ps * f);
    r.power_violation = std::max(0.0, r.tx_power / scenario.config.p_max - 1.0);
    r.interference_violation = std::max(0.0, r.interference_power / scenario.config.i_max - 1.0);
    return r;
}

LinkReport evaluate_link(const ScenarioChannels& scenario, const ComplexMatrix& f,
                         const ComplexMatrix& w) {
    LinkReport r = audit(scenario, f);
    r.spectral_efficiency = spectral_efficiency(scenario, f, w);
    r.postcoder_rank = postcoder_rank(w);
    return r;
}

}  // namespace cogbf
