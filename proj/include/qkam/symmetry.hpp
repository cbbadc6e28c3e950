#pragma once

#include <string>

#include "qkam/complex_matrix.hpp"
#include "qkam/spectral.hpp"

namespace qkam {

// <V> = sum_k P_k V P_k, the block-diagonal (Zeno) part of V.
ComplexMatrix zeno_project(const SpectralResolution& res, const ComplexMatrix& v);

// {V} = V - <V>, the block-off-diagonal part.
ComplexMatrix offdiag_part(const SpectralResolution& res, const ComplexMatrix& v);

// Split of a Hermitian observable against the resolution of H:
//   noncons  - the block-off-diagonal part, not conserved;
//   robust   - sum_k tr(P_k M P_k)/d_k P_k, scalar on each eigenspace;
//   fragile  - the traceless-within-blocks remainder of the diagonal part.
struct ObservableDecomposition {
  ComplexMatrix noncons, robust, fragile;
  double residual = 0;  // || M - (noncons + robust + fragile) ||
};

ObservableDecomposition decompose_observable(const SpectralResolution& res,
                                             const ComplexMatrix& m, double herm_tol = -1);

enum class RobustnessLabel { Robust, Fragile, NonConserved, Mixed };

struct RobustnessClass {
  RobustnessLabel label;
  double noncons_norm = 0, robust_norm = 0, fragile_norm = 0;
};

std::string to_string(RobustnessLabel label);

// A part counts as present when its operator norm exceeds
// tol * max(1, ||M||). Two or more present parts give Mixed; none (M ~ 0)
// counts as Robust, the zero observable being a trivial polynomial in H.
RobustnessClass classify(const SpectralResolution& res, const ComplexMatrix& m,
                         double tol = 1e-8);

}  // namespace qkam
