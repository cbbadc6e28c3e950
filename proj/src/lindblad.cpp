#include "qkam/lindblad.hpp"

#include <cmath>

#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"
#include "qkam/models.hpp"

namespace qkam {

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  return devectorize(matrix.apply(vectorize(x)));
}

Superoperator Superoperator::zero(int dim) { return {dim, ComplexMatrix(dim * dim)}; }

CVec vectorize(const ComplexMatrix& x) {
  const int n = x.dim();
  CVec v(static_cast<size_t>(n) * n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) v[static_cast<size_t>(c) * n + r] = x(r, c);
  return v;
}

ComplexMatrix devectorize(const CVec& v) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (static_cast<size_t>(n) * n != v.size())
    throw DimensionMismatchError("devectorize: length is not a perfect square");
  ComplexMatrix x(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = v[static_cast<size_t>(c) * n + r];
  return x;
}

Superoperator left_mult(const ComplexMatrix& a) {
  return {a.dim(), kron(ComplexMatrix::identity(a.dim()), a)};
}

Superoperator right_mult(const ComplexMatrix& a) {
  return {a.dim(), kron(a.transpose(), ComplexMatrix::identity(a.dim()))};
}

Superoperator commutator_super(const ComplexMatrix& a, cplx coefficient) {
  Superoperator s{a.dim(), (left_mult(a).matrix - right_mult(a).matrix) * coefficient};
  return s;
}

Superoperator lindbladian(const ComplexMatrix& h, const std::vector<ComplexMatrix>& jumps) {
  const int d = h.dim();
  if (d > 8) throw DimensionMismatchError("lindbladian: D > 8 unsupported");
  ComplexMatrix m = commutator_super(h, cplx(0, -1)).matrix;
  for (const ComplexMatrix& l : jumps) {
    require_same_dim(h, l, "lindbladian");
    const ComplexMatrix ldl = l.dagger() * l;
    m += kron(l.conjugate(), l);
    m -= 0.5 * (left_mult(ldl).matrix + right_mult(ldl).matrix);
  }
  return {d, std::move(m)};
}

Superoperator dephasing(double omega, double kappa) {
  const ComplexMatrix sz = pauli_z();
  ComplexMatrix m = commutator_super(sz, cplx(0, -omega / 2.0)).matrix;
  m -= (kappa / 2.0) * (ComplexMatrix::identity(4) - kron(sz.transpose(), sz));
  return {2, std::move(m)};
}

double trace_preservation_defect(const Superoperator& l) {
  const CVec id = vectorize(ComplexMatrix::identity(l.dim));
  const CVec row = l.matrix.apply_dagger(id);  // (vec(1)^dag L)^dag
  return vec_norm(row);
}

double monotone(const MonotoneSpec& spec, const ComplexMatrix& rho, double pos_tol) {
  if (rho.dim() != spec.m.dim) throw DimensionMismatchError("monotone: dims");
  if (!(spec.lambda >= 0) || !std::isfinite(spec.lambda))
    throw DomainError("monotone: lambda must be finite and >= 0");
  if (rho.herm_defect() > 1e-10 * std::max(1.0, rho.frobenius_norm()))
    throw NotStateError("monotone: rho not Hermitian");
  if (std::abs(rho.trace() - cplx(1, 0)) > 1e-10)
    throw NotStateError("monotone: tr rho != 1");
  const HermEig e = herm_eig(rho);
  if (e.eigenvalues.front() <= pos_tol)
    throw NotPositiveError("monotone: rho not strictly positive");

  const ComplexMatrix x = spec.m.apply(rho);
  const ComplexMatrix xb = e.eigenvectors.dagger() * x * e.eigenvectors;
  double f = 0;
  const int n = rho.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f += std::norm(xb(i, j)) / (e.eigenvalues[i] + spec.lambda * e.eigenvalues[j]);
  return f;
}

SuperPropagator::SuperPropagator(const Superoperator& l)
    : dim_(l.dim), eig_(gen_eig(l.matrix)), sinv_(invert(eig_.eigenvectors)) {}

ComplexMatrix SuperPropagator::evolve(const ComplexMatrix& rho0, double t) const {
  CVec y = sinv_.apply(vectorize(rho0));
  for (size_t k = 0; k < y.size(); ++k) y[k] *= std::exp(t * eig_.eigenvalues[k]);
  ComplexMatrix rho = devectorize(eig_.eigenvectors.apply(y));
  // Evolution preserves Hermiticity; symmetrize away the solver roundoff.
  return 0.5 * (rho + rho.dagger());
}

std::pair<Trajectory, Trajectory> monotone_traj(const Superoperator& l, const Superoperator& v,
                                                double epsilon, const MonotoneSpec& spec,
                                                const ComplexMatrix& rho0,
                                                const TimeGrid& grid) {
  if (l.dim != v.dim || l.dim != rho0.dim()) throw DimensionMismatchError("monotone_traj: dims");
  grid.validate();
  const SuperPropagator free_prop(l);
  const Superoperator pert{l.dim, l.matrix + epsilon * v.matrix};
  const SuperPropagator pert_prop(pert);

  Trajectory unperturbed, perturbed;
  unperturbed.grid = grid;
  perturbed.grid = grid;
  unperturbed.meta.quantity = "monotone";
  perturbed.meta.quantity = "monotone";
  perturbed.meta.epsilon = epsilon;

  for (double t : grid.times) {
    for (int which = 0; which < 2; ++which) {
      const SuperPropagator& prop = which == 0 ? free_prop : pert_prop;
      const ComplexMatrix rho = prop.evolve(rho0, t);
      double f;
      try {
        f = monotone(spec, rho);
      } catch (const NotPositiveError&) {
        throw PositivityLostError("monotone_traj: state positivity lost at t", t);
      }
      (which == 0 ? unperturbed : perturbed).values.push_back(f);
    }
  }
  return {std::move(unperturbed), std::move(perturbed)};
}

Superoperator transported_symmetry(const KamResult& kamres, const Superoperator& m) {
  if (kamres.w.dim() != m.matrix.dim())
    throw DimensionMismatchError("transported_symmetry: dims");
  return {m.dim, kamres.w * m.matrix * invert(kamres.w)};
}

}  // namespace qkam
