#include "qkam/matfun.hpp"

#include <cmath>

#include "qkam/errors.hpp"

namespace qkam {

double op_norm(const ComplexMatrix& a) {
  const int n = a.dim();
  if (n == 0) return 0;
  if (a.max_abs() == 0.0) return 0;
  const ComplexMatrix gram = a.dagger() * a;
  const HermEig e = herm_eig(gram, 1e-8 * std::max(1.0, gram.frobenius_norm()));
  return std::sqrt(std::max(0.0, e.eigenvalues.back()));
}

ComplexMatrix expm(const ComplexMatrix& a, double t, double norm_cap) {
  const int n = a.dim();
  if (n < 1) throw DimensionMismatchError("expm: empty matrix");
  if (n > 64) throw DimensionMismatchError("expm: dim > 64 unsupported");
  if (!std::isfinite(t)) throw DomainError("expm: non-finite t");
  if (!a.all_finite()) throw DomainError("expm: non-finite entries");

  ComplexMatrix b = a * t;
  const double nb = b.frobenius_norm();
  if (nb > norm_cap) throw OverflowError("expm: ||tA|| exceeds cap");

  int s = 0;
  if (nb > 0.5) s = static_cast<int>(std::ceil(std::log2(nb / 0.5)));
  if (s > 0) b *= std::ldexp(1.0, -s);

  // Diagonal Pade [6/6] of exp: N(B) = sum c_j B^j, D(B) = N(-B).
  static const double c[7] = {1.0,        1.0 / 2.0,     5.0 / 44.0,   1.0 / 66.0,
                              1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  ComplexMatrix power = ComplexMatrix::identity(n);
  ComplexMatrix num = ComplexMatrix::identity(n);
  ComplexMatrix den = ComplexMatrix::identity(n);
  for (int j = 1; j <= 6; ++j) {
    power = power * b;
    num += power * c[j];
    den += power * ((j % 2 == 0) ? c[j] : -c[j]);
  }
  ComplexMatrix f = invert(den) * num;
  for (int k = 0; k < s; ++k) f = f * f;
  return f;
}

ComplexMatrix matfun_herm(const ComplexMatrix& a, const std::function<cplx(double)>& f,
                          double tol) {
  const HermEig e = herm_eig(a, tol);
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    const cplx fk = f(e.eigenvalues[k]);
    if (!std::isfinite(fk.real()) || !std::isfinite(fk.imag()))
      throw DomainError("matfun_herm: f non-finite at eigenvalue");
    CVec col(n);
    for (int i = 0; i < n; ++i) col[i] = e.eigenvectors(i, k);
    add_outer(out, col, col, fk);
  }
  return out;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& a, double tol) {
  const HermEig e = herm_eig(a);
  if (e.eigenvalues.front() <= tol)
    throw NotPositiveDefiniteError("inv_sqrt_psd: eigenvalue below tolerance");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    CVec col(n);
    for (int i = 0; i < n; ++i) col[i] = e.eigenvectors(i, k);
    add_outer(out, col, col, 1.0 / std::sqrt(e.eigenvalues[k]));
  }
  return out;
}

}  // namespace qkam
