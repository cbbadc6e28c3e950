#include "qkam/kam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkam/eig.hpp"
#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"
#include "qkam/symmetry.hpp"

namespace qkam {

namespace {

// Greedy capacity-constrained assignment of perturbed eigenvectors to the
// clusters of res: repeatedly commit the largest remaining overlap
// ||P_k v_i||^2 / ||v_i||^2 among open clusters. Fails below overlap 1/2,
// where adiabatic continuation of the subspaces is no longer trustworthy.
std::vector<std::vector<int>> assign_to_clusters(const SpectralResolution& res,
                                                 const ComplexMatrix& vectors) {
  const int n = res.dim();
  const int d = res.d();
  std::vector<std::vector<double>> overlap(n, std::vector<double>(d));
  for (int i = 0; i < n; ++i) {
    CVec col(n);
    for (int r = 0; r < n; ++r) col[r] = vectors(r, i);
    const double nv = vec_norm(col);
    for (int k = 0; k < d; ++k) {
      const CVec pv = res.projections[k].apply(col);
      const double o = vec_norm(pv) / nv;
      overlap[i][k] = o * o;
    }
  }
  std::vector<std::vector<int>> assigned(d);
  std::vector<int> remaining(d);
  for (int k = 0; k < d; ++k) remaining[k] = res.multiplicities[k];
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int best_i = -1, best_k = -1;
    double best = -1;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      for (int k = 0; k < d; ++k) {
        if (remaining[k] == 0) continue;
        if (overlap[i][k] > best) {
          best = overlap[i][k];
          best_i = i;
          best_k = k;
        }
      }
    }
    if (best < 0.5)
      throw LevelCrossingError(
          "cluster matching: best available overlap below 1/2 (eps too large for the gap)");
    assigned[best_k].push_back(best_i);
    --remaining[best_k];
    done[best_i] = true;
  }
  return assigned;
}

double spectral_mismatch_herm(const ComplexMatrix& a, const ComplexMatrix& b) {
  const HermEig ea = herm_eig(a), eb = herm_eig(b);
  double m = 0;
  for (size_t i = 0; i < ea.eigenvalues.size(); ++i)
    m = std::max(m, std::abs(ea.eigenvalues[i] - eb.eigenvalues[i]));
  return m;
}

// Greedy nearest matching of two complex spectra; max matched distance.
double spectral_mismatch_general(CVec ea, CVec eb) {
  double m = 0;
  std::vector<bool> used(eb.size(), false);
  for (const cplx& x : ea) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < eb.size(); ++j) {
      if (used[j]) continue;
      const double dd = std::abs(x - eb[j]);
      if (dd < bd) {
        bd = dd;
        best = static_cast<int>(j);
      }
    }
    used[best] = true;
    m = std::max(m, bd);
  }
  return m;
}

}  // namespace

ComplexMatrix solve_homological(const SpectralResolution& res, const ComplexMatrix& v) {
  if (res.dim() != v.dim()) throw DimensionMismatchError("solve_homological: dims");
  const int n = res.dim();
  ComplexMatrix k1(n);
  if (res.d() == 1) return k1;  // everything commutes: K_1 = 0
  for (int l = 0; l < res.d(); ++l) {
    const ComplexMatrix s = reduced_resolvent(res, l);
    k1 += s * v * res.projections[l];
  }
  return k1 * cplx(0, 1);
}

SeriesTerms series_order2(const SpectralResolution& res, const ComplexMatrix& v) {
  SeriesTerms out;
  out.v0 = zeno_project(res, v);
  out.k1 = solve_homological(res, v);
  const int n = res.dim();
  out.v1 = ComplexMatrix(n);
  for (int l = 0; l < res.d(); ++l) {
    const ComplexMatrix s = reduced_resolvent(res, l);
    out.v1 -= res.projections[l] * v * s * v * res.projections[l];
  }
  const ComplexMatrix inner = v - 0.5 * offdiag_part(res, v);
  const ComplexMatrix rhs = cplx(0, 1) * commutator(inner, out.k1);
  out.k2 = solve_homological(res, rhs);
  return out;
}

KamResult isospectral_blockdiag(const SpectralResolution& res, const ComplexMatrix& v,
                                double epsilon) {
  if (res.dim() != v.dim()) throw DimensionMismatchError("isospectral_blockdiag: dims");
  if (!(epsilon > 0)) throw DomainError("isospectral_blockdiag: epsilon must be > 0");
  const int n = res.dim();

  const ComplexMatrix h = res.reconstruct();
  const ComplexMatrix h_pert = h + epsilon * v;
  const HermEig pert = herm_eig(h_pert);

  const std::vector<std::vector<int>> groups = assign_to_clusters(res, pert.eigenvectors);

  ComplexMatrix q(n);
  for (int k = 0; k < res.d(); ++k) {
    ComplexMatrix ptilde(n);
    for (int i : groups[k]) {
      CVec col(n);
      for (int r = 0; r < n; ++r) col[r] = pert.eigenvectors(r, i);
      add_outer(ptilde, col, col);
    }
    q += ptilde * res.projections[k];
  }

  ComplexMatrix w;
  try {
    w = q * inv_sqrt_psd(q.dagger() * q);
  } catch (const NotPositiveDefiniteError&) {
    throw SingularOverlapError("isospectral_blockdiag: overlap matrix Q is singular");
  }

  KamResult out;
  const SeriesTerms series = series_order2(res, v);
  out.v_zeno = series.v0;
  out.k1 = series.k1;
  out.v1 = series.v1;
  out.k2 = series.k2;
  out.w = w;
  out.epsilon = epsilon;
  out.v_resummed = (w.dagger() * h_pert * w - h) * (1.0 / epsilon);
  out.residual_blockdiag = op_norm(offdiag_part(res, out.v_resummed));
  out.residual_isospectral = spectral_mismatch_herm(h + epsilon * out.v_resummed, h_pert);
  out.w_distance = op_norm(w - ComplexMatrix::identity(n));
  return out;
}

KamResult isospectral_blockdiag_general(const SpectralResolution& res_l,
                                        const ComplexMatrix& v, double epsilon) {
  if (res_l.dim() != v.dim())
    throw DimensionMismatchError("isospectral_blockdiag_general: dims");
  if (!(epsilon > 0)) throw DomainError("isospectral_blockdiag_general: epsilon must be > 0");
  const int n = res_l.dim();

  const ComplexMatrix l = res_l.reconstruct();
  const ComplexMatrix l_pert = l + epsilon * v;
  const GenEig pert = gen_eig(l_pert);
  const ComplexMatrix sinv = invert(pert.eigenvectors);

  const std::vector<std::vector<int>> groups = assign_to_clusters(res_l, pert.eigenvectors);

  ComplexMatrix q(n);
  for (int k = 0; k < res_l.d(); ++k) {
    ComplexMatrix ptilde(n);
    for (int i : groups[k])
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) ptilde(r, c) += pert.eigenvectors(r, i) * sinv(i, c);
    q += ptilde * res_l.projections[k];
  }

  ComplexMatrix qinv;
  try {
    qinv = invert(q);
  } catch (const IllConditionedError&) {
    throw SingularOverlapError("isospectral_blockdiag_general: overlap matrix Q is singular");
  }

  KamResult out;
  const SeriesTerms series = series_order2(res_l, v);
  out.v_zeno = series.v0;
  out.k1 = series.k1;
  out.v1 = series.v1;
  out.k2 = series.k2;
  out.w = q;
  out.epsilon = epsilon;
  out.v_resummed = (qinv * l_pert * q - l) * (1.0 / epsilon);
  out.residual_blockdiag = op_norm(offdiag_part(res_l, out.v_resummed));
  const GenEig check = gen_eig(l + epsilon * out.v_resummed);
  out.residual_isospectral = spectral_mismatch_general(check.eigenvalues, pert.eigenvalues);
  out.w_distance = op_norm(q - ComplexMatrix::identity(n));
  return out;
}

BoundReport bounds(int d, double eta, double norm_v, double epsilon) {
  if (d < 1) throw DomainError("bounds: d must be >= 1");
  if (!(eta > 0)) throw DomainError("bounds: eta must be > 0");
  if (epsilon < 0) throw DomainError("bounds: epsilon must be >= 0");
  if (norm_v < 0) throw DomainError("bounds: norm_v must be >= 0");

  BoundReport out;
  out.d = d;
  out.eta = eta;
  out.epsilon = epsilon;
  out.norm_v = norm_v;
  out.x0 = (13.0 + 12.0 * std::sqrt(2.0)) / (17.0 + 12.0 * std::sqrt(2.0));

  const double eff = epsilon * norm_v;
  const double sqd = std::sqrt(static_cast<double>(d));
  out.zeno_a = 2.0 * sqd * eff / eta;
  out.zeno_b = out.zeno_a * eff;

  const double x = 4.0 * eff / eta;
  if (x >= 1.0) throw InvalidBoundError("bounds: 4 eps ||V|| / eta >= 1, formula domain left");
  out.delta_hat_inf = 2.0 * sqd * (std::pow(1.0 - x, -0.25) - 1.0);
  out.linear_bound = 7.0 * sqd * eff / eta;
  out.validity = x <= out.x0;
  return out;
}

}  // namespace qkam
