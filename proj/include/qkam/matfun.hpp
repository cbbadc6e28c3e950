#pragma once

#include <functional>

#include "qkam/complex_matrix.hpp"
#include "qkam/eig.hpp"

namespace qkam {

// Largest singular value, sqrt(lambda_max(A^dagger A)).
double op_norm(const ComplexMatrix& a);

// e^{tA} by scaling-and-squaring with diagonal Pade [6/6], scaled so
// ||tA||_F / 2^s <= 0.5. Throws OverflowError when ||tA||_F exceeds the cap.
ComplexMatrix expm(const ComplexMatrix& a, double t = 1.0, double norm_cap = 1e8);

// f applied to the spectrum of a Hermitian matrix: V f(Lambda) V^dagger.
// Throws DomainError when f is non-finite at an eigenvalue.
ComplexMatrix matfun_herm(const ComplexMatrix& a, const std::function<cplx(double)>& f,
                          double tol = -1);

// Hermitian B with B^2 = A^{-1} for Hermitian positive-definite A.
// Throws NotPositiveDefiniteError when an eigenvalue is <= tol.
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& a, double tol = 1e-12);

}  // namespace qkam
