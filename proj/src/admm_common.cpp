// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include "cogbf/admm_trace.hpp"
#include "cogbf/hybrid.hpp"
#include "cogbf/projections.hpp"
#include "cogbf/rng.hpp"

namespace cogbf {

std::string_view to_string(Termination t) {
    return t == Termination::TolerancesMet ? "tolerances-met" : "n_max-reached";
}

Termination termination_from_string(std::string_view s) {
    if (s == "tolerances-met") {
        return Termination::TolerancesMet;
    }
    if (s == "n_max-reached") {
        return Termination::MaxIterations;
    }
    throw std::invalid_argument("unknown termination reason: " + std::string(s));
}

int AdmmTrace::total_inner_iterations() const {
    int total = 0;
    for (const auto& r : iterations) {
        total += r.inner_iterations;
    }
    return total;
}

ComplexMatrix analog_update(const ComplexMatrix& target, const ComplexMatrix& digital_prev) {
    // target * B^H (B B^H)^{-1} = [ (B B^H)^{-1} B target^H ]^H
    const ComplexMatrix gram = digital_prev * digital_prev.adjoint();
    const ComplexMatrix unconstrained =
        solve_gram(gram, digital_prev * target.adjoint()).adjoint();
    return project_onto_F(unconstrained);
}

ComplexMatrix digital_update(const ComplexMatrix& target, const ComplexMatrix& analog) {
    return solve_gram(analog.adjoint() * analog, analog.adjoint() * target);
}

RandomFactorization random_factorization(Eigen::Index rows, Eigen::Index chains,
                                         Eigen::Index streams, double power,
                                         std::uint64_t seed) {
    Rng rng(seed);
    RandomFactorization out;
    out.analog = rng.unit_modulus_matrix(rows, chains);
    out.digital = rng.complex_normal_matrix(chains, streams);
    out.auxiliary = rng.complex_normal_matrix(rows, streams);
    const double prod = fro_sq(out.analog * out.digital);
    if (prod > 0.0) {
        out.digital *= std::sqrt(power / prod);
    }
    const double aux = fro_sq(out.auxiliary);
    if (aux > 0.0) {
        out.auxiliary *= std::sqrt(power / aux);
    }
    return out;
}

}  // namespace cogbf
