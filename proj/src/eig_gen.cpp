#include <algorithm>
#include <cmath>
#include <limits>

#include "qkam/eig.hpp"
#include "qkam/errors.hpp"

namespace qkam {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
  double c;  // real
  cplx s;
};

// G [f; g] = [r; 0] with G = [[c, s], [-conj(s), c]].
Givens make_givens(cplx f, cplx g) {
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return {1.0, cplx(0, 0)};
  const double r = std::hypot(af, ag);
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  return {af / r, (f / af) * std::conj(g) / r};
}

// Reduce to upper Hessenberg by Householder reflectors; accumulates the
// similarity in q so that a_in = q * h * q^dagger.
void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const int n = h.dim();
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    CVec v(m);
    double normx = 0;
    for (int i = 0; i < m; ++i) {
      v[i] = h(k + 1 + i, k);
      normx += std::norm(v[i]);
    }
    normx = std::sqrt(normx);
    if (normx <= kEps * h.frobenius_norm()) continue;
    cplx alpha;
    if (std::abs(v[0]) == 0.0)
      alpha = -normx;
    else
      alpha = -(v[0] / std::abs(v[0])) * normx;
    v[0] -= alpha;
    double vv = 0;
    for (const cplx& x : v) vv += std::norm(x);
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;

    // rows k+1..n-1: H <- P H
    for (int j = 0; j < n; ++j) {
      cplx dot = 0;
      for (int i = 0; i < m; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= beta;
      for (int i = 0; i < m; ++i) h(k + 1 + i, j) -= dot * v[i];
    }
    // cols k+1..n-1: H <- H P
    for (int i = 0; i < n; ++i) {
      cplx dot = 0;
      for (int j = 0; j < m; ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= beta;
      for (int j = 0; j < m; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    for (int i = 0; i < n; ++i) {
      cplx dot = 0;
      for (int j = 0; j < m; ++j) dot += q(i, k + 1 + j) * v[j];
      dot *= beta;
      for (int j = 0; j < m; ++j) q(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0;
  }
}

// Single-shift QR with Wilkinson shifts on the Hessenberg matrix; on return
// h is upper triangular (complex Schur form) and q accumulates the basis.
void schur_qr(ComplexMatrix& h, ComplexMatrix& q) {
  const int n = h.dim();
  const double scale = std::max(h.frobenius_norm(), 1e-300);
  int hi = n - 1;
  int stagnant = 0;
  int total = 0;
  const int total_cap = 60 * std::max(n, 4);

  while (hi > 0) {
    if (++total > total_cap) throw NoConvergenceError("gen_eig: QR iteration cap exceeded");

    for (int i = 0; i < hi; ++i) {
      double thresh = kEps * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1)));
      if (thresh == 0.0) thresh = kEps * scale;
      if (std::abs(h(i + 1, i)) <= thresh) h(i + 1, i) = 0;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != cplx(0, 0)) --lo;
    if (lo == hi) {
      --hi;
      stagnant = 0;
      continue;
    }

    cplx mu;
    if (stagnant > 0 && stagnant % 12 == 0) {
      mu = h(hi, hi) + 1.5 * std::abs(h(hi, hi - 1));
    } else {
      const cplx a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi);
      const cplx a21 = h(hi, hi - 1), a22 = h(hi, hi);
      const cplx half = 0.5 * (a11 - a22);
      const cplx disc = std::sqrt(half * half + a12 * a21);
      const cplx den = (std::abs(half + disc) >= std::abs(half - disc)) ? half + disc : half - disc;
      mu = (std::abs(den) == 0.0) ? a22 : a22 - a12 * a21 / den;
    }
    ++stagnant;

    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<Givens> rot(hi - lo);
    for (int i = lo; i < hi; ++i) {
      const Givens g = make_givens(h(i, i), h(i + 1, i));
      rot[i - lo] = g;
      for (int j = (i > 0 ? i - 1 : 0); j < n; ++j) {
        const cplx x = h(i, j), y = h(i + 1, j);
        h(i, j) = g.c * x + g.s * y;
        h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      h(i + 1, i) = 0;
    }
    for (int i = lo; i < hi; ++i) {
      const Givens g = rot[i - lo];
      const int rmax = std::min(i + 1, n - 1);
      for (int r = 0; r <= rmax; ++r) {
        const cplx x = h(r, i), y = h(r, i + 1);
        h(r, i) = g.c * x + std::conj(g.s) * y;
        h(r, i + 1) = -g.s * x + g.c * y;
      }
      for (int r = 0; r < n; ++r) {
        const cplx x = q(r, i), y = q(r, i + 1);
        q(r, i) = g.c * x + std::conj(g.s) * y;
        q(r, i + 1) = -g.s * x + g.c * y;
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }
}

// Eigenvectors of the triangular factor by back-substitution, guarded
// against vanishing denominators (LAPACK ztrevc-style).
CVec triangular_eigvec(const ComplexMatrix& t, int i, double scale) {
  const int n = t.dim();
  CVec y(n, cplx(0, 0));
  y[i] = 1;
  const double smin = std::max(kEps * std::abs(t(i, i)), kEps * scale * 1e-3) + 1e-300;
  for (int j = i - 1; j >= 0; --j) {
    cplx acc = 0;
    for (int k = j + 1; k <= i; ++k) acc += t(j, k) * y[k];
    cplx den = t(j, j) - t(i, i);
    if (std::abs(den) < smin) den = smin;
    y[j] = -acc / den;
    // Rescale if the solve is blowing up, to stay finite for defective input.
    const double ay = std::abs(y[j]);
    if (ay > 1e100) {
      for (int k = j; k <= i; ++k) y[k] /= ay;
    }
  }
  return y;
}

}  // namespace

GenEig gen_eig(const ComplexMatrix& a, double tol, double cond_cap) {
  const int n = a.dim();
  if (n < 1) throw DimensionMismatchError("gen_eig: empty matrix");
  if (n > 64) throw DimensionMismatchError("gen_eig: dim > 64 unsupported");
  if (!a.all_finite()) throw DomainError("gen_eig: non-finite entries");

  const double scale = a.frobenius_norm();
  if (tol < 0) tol = 1e-8;
  const double res_tol = tol * std::max(1.0, scale);

  ComplexMatrix t = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  hessenberg(t, q);
  schur_qr(t, q);

  GenEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int i = 0; i < n; ++i) out.eigenvalues[i] = t(i, i);

  for (int i = 0; i < n; ++i) {
    const CVec y = triangular_eigvec(t, i, scale);
    CVec x = q.apply(y);
    const double nx = vec_norm(x);
    if (nx == 0.0) throw IllConditionedError("gen_eig: null eigenvector");
    x = vec_scale(x, 1.0 / nx);

    // Refinement by inverse iteration, only for eigenvalues isolated enough
    // that the iteration cannot drift to a neighbor.
    double min_sep = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i) min_sep = std::min(min_sep, std::abs(out.eigenvalues[j] - out.eigenvalues[i]));
    CVec res = a.apply(x);
    for (size_t k = 0; k < res.size(); ++k) res[k] -= out.eigenvalues[i] * x[k];
    double rnorm = vec_norm(res);
    if (rnorm > 0.05 * res_tol && min_sep > 1e3 * kEps * scale) {
      for (int step = 0; step < 2 && rnorm > 0.05 * res_tol; ++step) {
        ComplexMatrix shifted = a;
        for (int d = 0; d < n; ++d) shifted(d, d) -= out.eigenvalues[i];
        CVec z;
        try {
          z = lu_solve(std::move(shifted), x);
        } catch (const IllConditionedError&) {
          break;
        }
        const double nz = vec_norm(z);
        if (!(nz > 0) || !std::isfinite(nz)) break;
        z = vec_scale(z, 1.0 / nz);
        CVec r2 = a.apply(z);
        for (size_t k = 0; k < r2.size(); ++k) r2[k] -= out.eigenvalues[i] * z[k];
        const double rn2 = vec_norm(r2);
        if (rn2 >= rnorm) break;
        x = z;
        rnorm = rn2;
      }
    }
    for (int r = 0; r < n; ++r) out.eigenvectors(r, i) = x[r];
    if (rnorm > res_tol)
      throw IllConditionedError("gen_eig: eigenpair residual exceeds tolerance (defective?)");
  }

  // cond_2 of the eigenvector matrix from the spectrum of S^dagger S.
  const ComplexMatrix gram = out.eigenvectors.dagger() * out.eigenvectors;
  const HermEig ge = herm_eig(gram, 1e-8 * std::max(1.0, gram.frobenius_norm()));
  const double lmin = ge.eigenvalues.front(), lmax = ge.eigenvalues.back();
  out.condition = (lmin <= 0) ? std::numeric_limits<double>::infinity()
                              : std::sqrt(lmax / lmin);
  if (!(out.condition <= cond_cap))
    throw IllConditionedError("gen_eig: eigenvector condition exceeds cap (defective?)");
  return out;
}

CVec lu_solve(ComplexMatrix a, CVec b) {
  const int n = a.dim();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatchError("lu_solve: size mismatch");
  std::vector<int> piv(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    if (best == 0.0) throw IllConditionedError("lu_solve: singular matrix");
    piv[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    const cplx akk = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / akk;
      a(i, k) = f;
      if (f == cplx(0, 0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return b;
}

ComplexMatrix invert(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix lu = a;
  std::vector<int> piv(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    if (best == 0.0) throw IllConditionedError("invert: singular matrix");
    piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
    const cplx akk = lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / akk;
      lu(i, k) = f;
      if (f == cplx(0, 0)) continue;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  ComplexMatrix inv(n);
  for (int col = 0; col < n; ++col) {
    CVec e(n, cplx(0, 0));
    e[col] = 1;
    for (int k = 0; k < n; ++k)
      if (piv[k] != k) std::swap(e[k], e[piv[k]]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) e[i] -= lu(i, j) * e[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) e[i] -= lu(i, j) * e[j];
      e[i] /= lu(i, i);
    }
    for (int r = 0; r < n; ++r) inv(r, col) = e[r];
  }
  return inv;
}

}  // namespace qkam
