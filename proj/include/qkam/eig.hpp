#pragma once

#include <vector>

#include "qkam/complex_matrix.hpp"

namespace qkam {

// Eigendecomposition of a Hermitian matrix: A = V diag(lambda) V^dagger,
// eigenvalues ascending, V unitary with eigenvectors in columns.
struct HermEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Eigendecomposition of a diagonalizable matrix: A S = S diag(lambda).
// condition estimates cond_2(S); a large value flags a defective or
// near-defective input.
struct GenEig {
  CVec eigenvalues;
  ComplexMatrix eigenvectors;
  double condition = 0;
};

// Cyclic complex Jacobi. Sweep cap 100; converged when the off-diagonal
// Frobenius mass drops below 1e-14 * ||A||_F.
// Throws NotHermitianError when ||A - A^dagger||_F > tol (default
// 1e-10 * max(1, ||A||_F)), NoConvergenceError past the sweep cap.
HermEig herm_eig(const ComplexMatrix& a, double tol = -1);

// Householder reduction to Hessenberg form, then single-shift QR with
// Wilkinson shifts; eigenvectors by back-substitution on the Schur factor
// with inverse-iteration refinement for isolated eigenvalues.
// Throws IllConditionedError when cond_2(S) exceeds cond_cap or when a
// residual exceeds tol * max(1, ||A||_F) (default tol 1e-8).
GenEig gen_eig(const ComplexMatrix& a, double tol = -1, double cond_cap = 1e12);

// Solve A x = b by LU with partial pivoting; A is consumed as workspace.
CVec lu_solve(ComplexMatrix a, CVec b);
// Matrix inverse via LU; throws IllConditionedError on a vanishing pivot.
ComplexMatrix invert(const ComplexMatrix& a);

}  // namespace qkam
