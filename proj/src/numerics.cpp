// SPDX-License-Identifier: Apache-2.0
#include "cogbf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cogbf {

namespace {

constexpr double kHermitianTol = 1e-10;

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream msg;
        msg << "hermitian_eig: expected a non-empty square matrix, got " << a.rows() << "x"
            << a.cols();
        throw DimensionError(msg.str());
    }
    const double scale = std::max(1.0, a.norm());
    const double asym = (a - a.adjoint()).norm();
    if (asym > kHermitianTol * scale) {
        std::ostringstream msg;
        msg << "hermitian_eig: matrix is not Hermitian (||A - A^H||_F = " << asym << ")";
        throw DomainError(msg.str());
    }
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eig: eigen-solver did not converge");
    }
    // Eigen returns ascending order; flip to descending.
    HermitianEig out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

ComplexMatrix psd_power(const ComplexMatrix& a, PsdExponent p) {
    HermitianEig eig = hermitian_eig(a);
    const Eigen::Index n = a.rows();
    const double clamp_tol = 1e-12 * a.norm();
    RealVector& lam = eig.eigenvalues;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lam(i) < 0.0) {
            if (lam(i) < -clamp_tol) {
                std::ostringstream msg;
                msg << "psd_power: matrix is not PSD (eigenvalue " << lam(i) << ")";
                throw DomainError(msg.str());
            }
            lam(i) = 0.0;
        }
    }
    RealVector mapped(n);
    if (p == PsdExponent::Half) {
        mapped = lam.cwiseSqrt();
    } else {
        const double floor = 1e-10 * a.trace().real() / static_cast<double>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (lam(i) < floor || lam(i) <= 0.0) {
                std::ostringstream msg;
                msg << "psd_power: eigenvalue " << lam(i) << " below floor " << floor
                    << " for a negative exponent";
                throw SingularityError(msg.str());
            }
            mapped(i) = p == PsdExponent::MinusHalf ? 1.0 / std::sqrt(lam(i)) : 1.0 / lam(i);
        }
    }
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix out = v * mapped.asDiagonal() * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols()) {
        throw DimensionError("solve_linear: coefficient matrix is not square");
    }
    if (a.rows() != b.rows()) {
        throw DimensionError("solve_linear: right-hand side row count mismatch");
    }
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    // Reciprocal condition estimate guards against silently amplified noise.
    const double rcond = lu.rcond();
    const RealVector pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio =
        pivots.size() == 0 ? 1.0 : pivots.minCoeff() / std::max(pivots.maxCoeff(), 1e-300);
    if (!(rcond > 1e-14) || !(pivot_ratio > 1e-14)) {
        std::ostringstream msg;
        msg << "solve_linear: matrix is singular to working precision (rcond = " << rcond << ")";
        throw SingularityError(msg.str());
    }
    ComplexMatrix x = lu.solve(b);
    const double bnorm = b.norm();
    const double resid = (a * x - b).norm();
    if (resid > 1e-8 * std::max(bnorm, 1e-300) && resid > 0.0) {
        std::ostringstream msg;
        msg << "solve_linear: residual " << resid << " exceeds tolerance";
        throw SingularityError(msg.str());
    }
    return x;
}

ComplexMatrix solve_gram(const ComplexMatrix& gram, const ComplexMatrix& b) {
    const Eigen::Index n = gram.rows();
    Eigen::LDLT<ComplexMatrix> ldlt(gram);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        const RealVector d = ldlt.vectorD().real();
        const double dmax = d.maxCoeff();
        if (d.minCoeff() > 1e-13 * dmax && dmax > 0.0) {
            return ldlt.solve(b);
        }
    }
    double ridge = 1e-10 * gram.trace().real() / static_cast<double>(n);
    if (!(ridge > 0.0)) {
        ridge = 1e-10;
    }
    ComplexMatrix reg = gram;
    reg.diagonal().array() += ridge;
    Eigen::LDLT<ComplexMatrix> retry(reg);
    if (retry.info() != Eigen::Success) {
        throw SingularityError("solve_gram: Gram matrix singular after ridge regularization");
    }
    ComplexMatrix x = retry.solve(b);
    if (!all_finite(x)) {
        throw SingularityError("solve_gram: non-finite solution after ridge regularization");
    }
    return x;
}

double log2_det_hpd(const ComplexMatrix& a) {
    Eigen::LLT<ComplexMatrix> llt(0.5 * (a + a.adjoint()));
    if (llt.info() != Eigen::Success) {
        throw DomainError("log2_det_hpd: matrix is not positive definite");
    }
    const auto& l = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        acc += std::log2(l(i, i).real());
    }
    return 2.0 * acc;
}

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_modulus_deviation(const ComplexMatrix& a) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            worst = std::max(worst, std::abs(std::abs(a(i, j)) - 1.0));
        }
    }
    return worst;
}

}  // namespace cogbf
