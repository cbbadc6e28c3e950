#pragma once

#include "qkam/complex_matrix.hpp"
#include "qkam/spectral.hpp"

namespace qkam {

// Solution K_1 of the homological equation i[H, K_1] = -{V} in the gauge
// <K_1> = 0:  K_1 = i sum_l S_l V P_l. Returns zero when d == 1 (everything
// commutes with H).
ComplexMatrix solve_homological(const SpectralResolution& res, const ComplexMatrix& v);

// Terms of the block-diagonalizing series through second order:
//   v0 = <V>                         (the Zeno part)
//   k1 solves i[H,K_1] = -{V}
//   v1 = -sum_l P_l V S_l V P_l      (block-diagonal, Hermitian)
//   k2 solves i[H,K_2] = -{ i[V - {V}/2, K_1] }
struct SeriesTerms {
  ComplexMatrix v0, v1, k1, k2;
};

SeriesTerms series_order2(const SpectralResolution& res, const ComplexMatrix& v);

// Exact isospectral block-diagonal resummation of the perturbation:
//   H + eps V_resummed = W^dagger (H + eps V) W
// with V_resummed block-diagonal w.r.t. the resolution of H and W the
// direct rotation between unperturbed and perturbed spectral subspaces.
struct KamResult {
  ComplexMatrix v_zeno;       // order-0 term V_0 = <V>
  ComplexMatrix k1, v1, k2;   // series terms
  ComplexMatrix w;            // unitary (Hermitian case) or invertible (oblique)
  ComplexMatrix v_resummed;   // V_H(eps) resp. V_L(eps)
  double epsilon = 0;
  double residual_blockdiag = 0;    // ||{V_resummed}||
  double residual_isospectral = 0;  // spectral mismatch of H + eps V vs H + eps V_resummed
  double w_distance = 0;            // ||W - 1||
};

// Hermitian case. Perturbed eigenvectors are matched to the clusters of res
// by largest subspace overlap, exactly d_k per cluster; W = Q (Q^dagger Q)^{-1/2}
// with Q = sum_k Ptilde_k P_k. Throws LevelCrossingError when an assignment
// overlap drops below 1/2 and SingularOverlapError when Q is singular; both
// mean eps is too large for the gap.
KamResult isospectral_blockdiag(const SpectralResolution& res, const ComplexMatrix& v,
                                double epsilon);

// Oblique analog for diagonalizable generators (Lindbladians): a similarity
// W = Q without unitarization,  L + eps V_resummed = W^{-1} (L + eps V) W.
KamResult isospectral_blockdiag_general(const SpectralResolution& res_l,
                                        const ComplexMatrix& v, double epsilon);

// Closed-form stability bounds for d distinct eigenvalues, gap eta,
// perturbation norm ||V|| and strength eps. All formulas use the effective
// strength eps ||V||.
struct BoundReport {
  int d = 0;
  double eta = 0;
  double epsilon = 0;
  double norm_v = 0;
  double zeno_a = 0;          // 2 sqrt(d) eps ||V|| / eta
  double zeno_b = 0;          // zeno_a * eps ||V||
  double delta_hat_inf = 0;   // 2 sqrt(d) (1/(1 - 4 eps||V||/eta)^{1/4} - 1)
  double linear_bound = 0;    // 7 sqrt(d) eps ||V|| / eta
  double x0 = 0;              // (13 + 12 sqrt 2) / (17 + 12 sqrt 2)
  bool validity = false;      // 4 eps ||V|| / eta <= x0

  double zeno_bound_at(double t) const { return zeno_a + zeno_b * t; }
};

// Throws InvalidBoundError when 4 eps ||V|| / eta >= 1 (the quartic-root
// formula leaves its domain).
BoundReport bounds(int d, double eta, double norm_v, double epsilon);

}  // namespace qkam
