// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra used by every solver. This is the only
// component that talks to the Eigen backend directly; everything else works
// with the aliases below.
#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cogbf/errors.hpp"

namespace cogbf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order and orthonormal eigenvectors stored column-wise.
struct HermitianEig {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Exponents supported by psd_power.
enum class PsdExponent { Half, MinusHalf, MinusOne };

/// Decomposes a Hermitian matrix. The input is symmetrized as (A + A^H)/2
/// before factorization.
///
/// Throws DimensionError for non-square input and DomainError when
/// ||A - A^H||_F exceeds 1e-10 * max(1, ||A||_F).
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// Matrix power of a Hermitian PSD matrix via its eigen-decomposition.
///
/// Eigenvalues in [-1e-12 ||A||_F, 0) are clamped to zero. For negative
/// exponents every eigenvalue must be at least 1e-10 * trace(A) / n,
/// otherwise a SingularityError naming the offending eigenvalue is thrown.
ComplexMatrix psd_power(const ComplexMatrix& a, PsdExponent p);

/// Solves a * x = b without forming an explicit inverse.
///
/// Throws SingularityError when a is rank deficient or when the residual
/// exceeds 1e-8 * ||b||_F.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

/// Solves (a + ridge I) x = b for a Hermitian PSD Gram matrix a, retrying with
/// ridge 1e-10 * trace(a) / n when the plain system is singular.
ComplexMatrix solve_gram(const ComplexMatrix& gram, const ComplexMatrix& b);

/// log2 det of a Hermitian positive definite matrix (Cholesky based).
double log2_det_hpd(const ComplexMatrix& a);

/// Frobenius norm squared.
inline double fro_sq(const ComplexMatrix& a) { return a.squaredNorm(); }

/// Real part of the Frobenius inner product Re tr(a^H b).
inline double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.conjugate().cwiseProduct(b)).sum().real();
}

/// True when every entry is finite.
bool all_finite(const ComplexMatrix& a);

/// Largest deviation of |a(i,j)| from 1 over all entries.
double max_modulus_deviation(const ComplexMatrix& a);

}  // namespace cogbf
