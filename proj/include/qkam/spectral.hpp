#pragma once

#include <vector>

#include "qkam/complex_matrix.hpp"

namespace qkam {

// Resolution A = sum_k e_k P_k into distinct eigenvalues and idempotent
// projections, orthogonal for Hermitian input and oblique (Riesz) otherwise.
// Eigenvalues ascend by real part, then imaginary part.
struct SpectralResolution {
  CVec eigenvalues;                        // d distinct values
  std::vector<ComplexMatrix> projections;  // d projections
  std::vector<int> multiplicities;         // d_k, summing to dim
  double gap = 0;                          // eta = min_{k != l} |e_k - e_l|, 0 when d == 1
  bool oblique = false;

  int d() const { return static_cast<int>(eigenvalues.size()); }
  int dim() const { return projections.empty() ? 0 : projections.front().dim(); }
  // sum_k e_k P_k
  ComplexMatrix reconstruct() const;
};

// Hermitian resolution via herm_eig; eigenvalues chain-merged at spacing
// <= cluster_tol (default 1e-8 * max(1, ||A||_F)). Any pairwise eigenvalue
// spacing strictly inside (cluster_tol, 10 cluster_tol) raises
// AmbiguousClusteringError: the tolerance sits on a real spectral feature.
SpectralResolution resolve(const ComplexMatrix& a, double cluster_tol = -1);

// Riesz resolution of a diagonalizable matrix via gen_eig; clustering on
// |e_i - e_j|. Projections are oblique: P_k = S E_k S^{-1}.
SpectralResolution riesz_resolve(const ComplexMatrix& a, double cluster_tol = -1);

// S_l = sum_{k != l} P_k / (e_k - e_l), the reduced resolvent at e_l.
ComplexMatrix reduced_resolvent(const SpectralResolution& res, int ell);

// Coefficients of M = sum_n c_n A^n over the d distinct eigenvalues.
struct PolyCoeffs {
  CVec coefficients;
  double residual = 0;
};

// Solves the d x d Vandermonde system through the block means
// m_k = tr(P_k M P_k) / d_k by Newton interpolation (Bjorck-Pereyra style).
// Throws NotRobustError when the reconstruction residual exceeds tol
// (default 1e-8 * ||M||): M is then not a polynomial in A.
PolyCoeffs poly_coeffs(const SpectralResolution& res, const ComplexMatrix& m, double tol = -1);

}  // namespace qkam
