#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qkam/complex_matrix.hpp"

namespace qkam {

enum class PauliAxis { X, Y, Z };

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix pauli(PauliAxis axis);

// Tensor product of single-site Paulis on an N-qubit register, identity on
// unlisted sites. Site 0 is the leftmost Kronecker factor.
ComplexMatrix pauli_op(int n_sites, const std::vector<std::pair<int, PauliAxis>>& factors);

// H = -J sum_{n=1}^{N} sigma_n . sigma_{n+1}, periodic (sigma_{N+1} = sigma_1).
ComplexMatrix heisenberg_chain(int n_sites, double j);

// Conserved charges from the boost operator B = (1/2) sum_n n sigma_n . sigma_{n+1}:
// Q_{n+1} = -i [B, Q_n] with Q_2 = H. Returns {Q_2, ..., Q_{n_max}}.
std::vector<ComplexMatrix> boost_charges(int n_sites, int n_max, double j);

// Total magnetization sum_n sigma_{n,axis}.
ComplexMatrix magnetization(int n_sites, PauliAxis axis);

// Cyclic one-site shift permutation (site n -> site n+1).
ComplexMatrix cyclic_shift(int n_sites);

// The two-level embodiment of a degeneracy-lifting conserved quantity:
// H = e 1, M = diag(m1, m2), V = sigma_x, psi0 = |e_1>, Delta = m1 - m2 > 0.
struct FragileExample {
  ComplexMatrix h, m, v;
  double delta;
  CVec psi0;
};

FragileExample fragile_example(double e, double m1, double m2);

// eps_n = sqrt(4n+3)/(2n+1), t_n = pi / (sqrt(1+eps_n^2) - 1) = (2n+1) pi:
// the sequence along which the Zeno divergence saturates the trivial bound 2.
struct ZenoSaturationPoint {
  double epsilon;
  double time;
};

ZenoSaturationPoint zeno_saturation_sequence(int n);

// GUE-style draw (A + A^dagger)/2 rescaled to operator norm 1; deterministic
// per seed.
ComplexMatrix random_hermitian(int dim, uint64_t seed);

// Normalized complex Gaussian vector; deterministic per seed.
CVec random_state(int dim, uint64_t seed);

}  // namespace qkam
