#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkam/eig.hpp"
#include "qkam/errors.hpp"

namespace qkam {

namespace {

double offdiag_mass(const ComplexMatrix& a) {
  const int n = a.dim();
  double s = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q)) + std::norm(a(q, p));
  return std::sqrt(s);
}

}  // namespace

HermEig herm_eig(const ComplexMatrix& input, double tol) {
  const int n = input.dim();
  if (n < 1) throw DimensionMismatchError("herm_eig: empty matrix");
  if (!input.all_finite()) throw DomainError("herm_eig: non-finite entries");

  const double scale = input.frobenius_norm();
  if (tol < 0) tol = 1e-10 * std::max(1.0, scale);
  if (input.herm_defect() > tol)
    throw NotHermitianError("herm_eig: Hermiticity defect exceeds tolerance");

  ComplexMatrix a = input;
  // Symmetrize exactly: kills the sub-tolerance defect so rotations see a
  // Hermitian matrix.
  for (int p = 0; p < n; ++p) {
    a(p, p) = cplx(a(p, p).real(), 0);
    for (int q = p + 1; q < n; ++q) {
      const cplx m = 0.5 * (a(p, q) + std::conj(a(q, p)));
      a(p, q) = m;
      a(q, p) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double conv = 1e-14 * std::max(scale, 1e-300);
  const int sweep_cap = 100;
  bool converged = (n == 1);
  for (int sweep = 0; sweep < sweep_cap && !converged; ++sweep) {
    if (offdiag_mass(a) <= conv) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double absb = std::abs(apq);
        if (absb == 0.0) continue;

        // Phase that makes the (p,q) block real symmetric, then the
        // classical 2x2 symmetric Schur rotation.
        const cplx phase = apq / absb;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * absb);
        double t;
        if (tau >= 0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p,q) plane;
        // update A <- U^dagger A U and V <- V U.
        const cplx u10 = -s * std::conj(phase);
        const cplx u11 = c * std::conj(phase);
        for (int j = 0; j < n; ++j) {  // rows: A <- U^dagger A
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(u10) * aqj;
          a(q, j) = s * apj + std::conj(u11) * aqj;
        }
        for (int i = 0; i < n; ++i) {  // cols: A <- A U
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + u10 * aiq;
          a(i, q) = s * aip + u11 * aiq;
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + u10 * viq;
          v(i, q) = s * vip + u11 * viq;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = cplx(a(p, p).real(), 0);
        a(q, q) = cplx(a(q, q).real(), 0);
      }
    }
  }
  if (!converged && offdiag_mass(a) > conv)
    throw NoConvergenceError("herm_eig: Jacobi sweep cap exceeded");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace qkam
