#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkam/complex_matrix.hpp"
#include "qkam/eig.hpp"

namespace qkam {

// Strictly increasing time grid starting at 0.
struct TimeGrid {
  std::vector<double> times;
  enum class Spacing { Linear, Geometric } spacing = Spacing::Linear;

  static TimeGrid linear(double t_max, int points);
  // {0} followed by a geometric ladder t_min .. t_max (points total).
  static TimeGrid geometric(double t_min, double t_max, int points);

  int size() const { return static_cast<int>(times.size()); }
  void validate() const;
};

struct TrajectoryMeta {
  double epsilon = 0;
  uint64_t seed = 0;
  std::string model;
  std::string quantity;
  std::string variant;  // e.g. "vs_free_evolution" for nonconserved drift
};

struct Trajectory {
  TimeGrid grid;
  CVec values;
  TrajectoryMeta meta;
  bool real_valued = true;

  double real_at(int i) const { return values[i].real(); }
  double max_real() const;
};

// Propagator e^{i s t G} for Hermitian G, diagonalized once; per-time cost
// is O(dim^2) phase application.
class HermPropagator {
 public:
  explicit HermPropagator(const ComplexMatrix& g);
  // e^{i sign t G}
  ComplexMatrix at(double t, double sign = 1.0) const;
  // e^{i sign t G} psi
  CVec apply(double t, double sign, const CVec& psi) const;
  const HermEig& eig() const { return eig_; }

 private:
  HermEig eig_;
};

// delta(t) = || e^{i t (H + eps V)} - e^{i t (H + eps V_approx)} ||.
Trajectory divergence_traj(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                           const ComplexMatrix& v_approx, const TimeGrid& grid);

// || M_t^eps - M || with M_t^eps = e^{i t (H+eps V)} M e^{-i t (H+eps V)}.
// When [M, H] != 0 the drift is measured against the free Heisenberg
// evolution of M instead, flagged in meta.variant.
Trajectory observable_drift(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                            const ComplexMatrix& m, const TimeGrid& grid);

// <psi_0| e^{i t G} M e^{-i t G} |psi_0>.
Trajectory expectation_traj(const ComplexMatrix& g, const ComplexMatrix& m, const CVec& psi0,
                            const TimeGrid& grid);

// || e^{-i t (H+eps V)} e^{-beta H} e^{i t (H+eps V)} - e^{-beta H} ||.
Trajectory gibbs_drift(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                       double beta, const TimeGrid& grid);

}  // namespace qkam
