#include "qkam/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"

namespace qkam {

TimeGrid TimeGrid::linear(double t_max, int points) {
  TimeGrid g;
  g.spacing = Spacing::Linear;
  g.times.resize(points);
  for (int i = 0; i < points; ++i) g.times[i] = t_max * i / (points - 1);
  g.validate();
  return g;
}

TimeGrid TimeGrid::geometric(double t_min, double t_max, int points) {
  TimeGrid g;
  g.spacing = Spacing::Geometric;
  g.times.resize(points);
  g.times[0] = 0;
  const int m = points - 1;
  for (int i = 1; i <= m; ++i)
    g.times[i] = t_min * std::pow(t_max / t_min, static_cast<double>(i - 1) / (m - 1));
  g.validate();
  return g;
}

void TimeGrid::validate() const {
  if (times.size() < 2) throw DomainError("TimeGrid: need at least 2 points");
  if (times.front() != 0.0) throw DomainError("TimeGrid: t_0 must be 0");
  for (size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1])) throw DomainError("TimeGrid: times not strictly increasing");
    if (!std::isfinite(times[i + 1])) throw DomainError("TimeGrid: non-finite time");
  }
}

double Trajectory::max_real() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const cplx& v : values) m = std::max(m, v.real());
  return m;
}

HermPropagator::HermPropagator(const ComplexMatrix& g) : eig_(herm_eig(g)) {}

ComplexMatrix HermPropagator::at(double t, double sign) const {
  const int n = eig_.eigenvectors.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    const double phase = sign * t * eig_.eigenvalues[k];
    const cplx f(std::cos(phase), std::sin(phase));
    CVec col(n);
    for (int i = 0; i < n; ++i) col[i] = eig_.eigenvectors(i, k);
    add_outer(out, col, col, f);
  }
  return out;
}

CVec HermPropagator::apply(double t, double sign, const CVec& psi) const {
  CVec y = eig_.eigenvectors.apply_dagger(psi);
  for (size_t k = 0; k < y.size(); ++k) {
    const double phase = sign * t * eig_.eigenvalues[k];
    y[k] *= cplx(std::cos(phase), std::sin(phase));
  }
  return eig_.eigenvectors.apply(y);
}

Trajectory divergence_traj(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                           const ComplexMatrix& v_approx, const TimeGrid& grid) {
  require_same_dim(h, v, "divergence_traj");
  require_same_dim(h, v_approx, "divergence_traj");
  grid.validate();
  const HermPropagator pa(h + epsilon * v);
  const HermPropagator pb(h + epsilon * v_approx);

  Trajectory out;
  out.grid = grid;
  out.real_valued = true;
  out.meta.epsilon = epsilon;
  out.meta.quantity = "divergence";
  out.values.reserve(grid.size());
  for (double t : grid.times)
    out.values.push_back(t == 0.0 ? 0.0 : op_norm(pa.at(t) - pb.at(t)));
  return out;
}

Trajectory observable_drift(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                            const ComplexMatrix& m, const TimeGrid& grid) {
  require_same_dim(h, v, "observable_drift");
  require_same_dim(h, m, "observable_drift");
  grid.validate();

  const double comm_norm = op_norm(commutator(m, h));
  const double comm_tol = 1e-10 * std::max(1.0, op_norm(m) * op_norm(h));
  const bool conserved = comm_norm <= comm_tol;

  const HermPropagator pert(h + epsilon * v);
  // Work in the perturbed eigenbasis: drift reduces to a phase sandwich.
  const int n = h.dim();
  const ComplexMatrix& u = pert.eig().eigenvectors;
  const ComplexMatrix m_basis = u.dagger() * m * u;

  Trajectory out;
  out.grid = grid;
  out.real_valued = true;
  out.meta.epsilon = epsilon;
  out.meta.quantity = "observable_drift";
  if (!conserved) out.meta.variant = "vs_free_evolution";

  const HermPropagator* free_prop = nullptr;
  HermPropagator free_storage{conserved ? ComplexMatrix::identity(1) : h};
  if (!conserved) free_prop = &free_storage;

  ComplexMatrix sandwich(n);
  for (double t : grid.times) {
    if (t == 0.0) {
      out.values.push_back(0.0);
      continue;
    }
    for (int r = 0; r < n; ++r) {
      const double pr = t * pert.eig().eigenvalues[r];
      for (int c = 0; c < n; ++c) {
        const double pc = t * pert.eig().eigenvalues[c];
        const double ph = pr - pc;
        sandwich(r, c) = m_basis(r, c) * cplx(std::cos(ph), std::sin(ph));
      }
    }
    const ComplexMatrix mt = u * sandwich * u.dagger();
    const ComplexMatrix ref = conserved ? m : free_prop->at(t) * m * free_prop->at(t, -1.0);
    out.values.push_back(op_norm(mt - ref));
  }
  return out;
}

Trajectory expectation_traj(const ComplexMatrix& g, const ComplexMatrix& m, const CVec& psi0,
                            const TimeGrid& grid) {
  require_same_dim(g, m, "expectation_traj");
  grid.validate();
  if (std::abs(vec_norm(psi0) - 1.0) > 1e-10)
    throw UnnormalizedStateError("expectation_traj: ||psi0|| != 1");

  const HermPropagator prop(g);
  const bool m_herm = m.herm_defect() <= 1e-10 * std::max(1.0, m.frobenius_norm());

  Trajectory out;
  out.grid = grid;
  out.real_valued = m_herm;
  out.meta.quantity = "expectation";
  out.values.reserve(grid.size());
  for (double t : grid.times) {
    const CVec psi = prop.apply(t, -1.0, psi0);
    out.values.push_back(vec_dot(psi, m.apply(psi)));
  }
  return out;
}

Trajectory gibbs_drift(const ComplexMatrix& h, const ComplexMatrix& v, double epsilon,
                       double beta, const TimeGrid& grid) {
  require_same_dim(h, v, "gibbs_drift");
  grid.validate();
  if (beta < 0) throw DomainError("gibbs_drift: beta must be >= 0");

  const ComplexMatrix gibbs = matfun_herm(h, [beta](double x) { return std::exp(-beta * x); });
  const HermPropagator pert(h + epsilon * v);
  const int n = h.dim();
  const ComplexMatrix& u = pert.eig().eigenvectors;
  const ComplexMatrix g_basis = u.dagger() * gibbs * u;

  Trajectory out;
  out.grid = grid;
  out.real_valued = true;
  out.meta.epsilon = epsilon;
  out.meta.quantity = "gibbs_drift";
  ComplexMatrix sandwich(n);
  for (double t : grid.times) {
    if (t == 0.0) {
      out.values.push_back(0.0);
      continue;
    }
    for (int r = 0; r < n; ++r) {
      const double pr = -t * pert.eig().eigenvalues[r];
      for (int c = 0; c < n; ++c) {
        const double pc = -t * pert.eig().eigenvalues[c];
        const double ph = pr - pc;
        sandwich(r, c) = g_basis(r, c) * cplx(std::cos(ph), std::sin(ph));
      }
    }
    out.values.push_back(op_norm(u * sandwich * u.dagger() - gibbs));
  }
  return out;
}

}  // namespace qkam
