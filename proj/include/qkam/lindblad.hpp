#pragma once

#include <utility>
#include <vector>

#include "qkam/complex_matrix.hpp"
#include "qkam/dynamics.hpp"
#include "qkam/kam.hpp"

namespace qkam {

// D^2 x D^2 matrix of a linear map on D x D operators under the fixed
// column-stacking convention: vec(A X B) = (B^T kron A) vec(X).
struct Superoperator {
  int dim = 0;  // underlying Hilbert-space dimension D
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& x) const;
  static Superoperator zero(int dim);
};

CVec vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(const CVec& v);

// rho -> A rho and rho -> rho A as superoperators.
Superoperator left_mult(const ComplexMatrix& a);
Superoperator right_mult(const ComplexMatrix& a);

// rho -> c (A rho - rho A).
Superoperator commutator_super(const ComplexMatrix& a, cplx coefficient);

// GKLS generator rho -> -i[H, rho] + sum_j (L_j rho L_j^dag - {L_j^dag L_j, rho}/2).
Superoperator lindbladian(const ComplexMatrix& h, const std::vector<ComplexMatrix>& jumps);

// The qubit dephasing generator -(i omega/2)[sigma_z, .] - (kappa/2)(id - sigma_z . sigma_z),
// built directly in this form; coherences decay as e^{-(kappa + i omega) t}.
Superoperator dephasing(double omega, double kappa);

// ||vec(1)^dagger L||, zero for a trace-preserving generator.
double trace_preservation_defect(const Superoperator& l);

// Monotone f_M(rho) = tr[ M(rho)^dag (L_rho + lambda R_rho)^{-1} M(rho) ],
// evaluated in closed form in the eigenbasis of rho:
// f = sum_{ij} |X_ij|^2 / (p_i + lambda p_j).
struct MonotoneSpec {
  Superoperator m;
  double lambda = 1.0;
};

// Throws NotPositiveError when min eig(rho) <= pos_tol, NotStateError when
// tr rho != 1 or rho is not Hermitian.
double monotone(const MonotoneSpec& spec, const ComplexMatrix& rho, double pos_tol = 1e-12);

// f_M along e^{tL} rho0 and e^{t(L + eps V)} rho0. Throws PositivityLostError
// (with the time) when an evolved state stops being strictly positive.
std::pair<Trajectory, Trajectory> monotone_traj(const Superoperator& l, const Superoperator& v,
                                                double epsilon, const MonotoneSpec& spec,
                                                const ComplexMatrix& rho0, const TimeGrid& grid);

// Mtilde = W M W^{-1} with W from isospectral_blockdiag_general: the symmetry
// of the perturbed generator transported from M; Mtilde = M + O(eps).
Superoperator transported_symmetry(const KamResult& kamres, const Superoperator& m);

// Propagator for a diagonalizable generator, diagonalized once.
class SuperPropagator {
 public:
  explicit SuperPropagator(const Superoperator& l);
  ComplexMatrix evolve(const ComplexMatrix& rho0, double t) const;

 private:
  int dim_;
  GenEig eig_;
  ComplexMatrix sinv_;
};

}  // namespace qkam
