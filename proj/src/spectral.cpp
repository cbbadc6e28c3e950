#include "qkam/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qkam/eig.hpp"
#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"

namespace qkam {

namespace {

// Union-find chain-merge on |e_i - e_j| <= tol, with the ambiguity guard:
// any pair strictly inside (tol, 10 tol) means the tolerance cuts through a
// real spectral feature. Returns cluster index per value.
std::vector<int> cluster_values(const CVec& values, double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = std::abs(values[i] - values[j]);
      if (dist > tol && dist < 10.0 * tol)
        throw AmbiguousClusteringError("clustering: eigenvalue spacing inside the gray zone");
      if (dist <= tol) parent[find(i)] = find(j);
    }
  std::vector<int> label(n, -1);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      label[i] = static_cast<int>(roots.size()) - 1;
    } else {
      label[i] = static_cast<int>(it - roots.begin());
    }
  }
  return label;
}

struct Cluster {
  cplx mean;
  std::vector<int> members;
};

std::vector<Cluster> build_clusters(const CVec& values, const std::vector<int>& label) {
  const int k = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Cluster> clusters(k);
  for (int i = 0; i < static_cast<int>(values.size()); ++i)
    clusters[label[i]].members.push_back(i);
  for (Cluster& c : clusters) {
    cplx s = 0;
    for (int i : c.members) s += values[i];
    c.mean = s / static_cast<double>(c.members.size());
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
    return a.mean.imag() < b.mean.imag();
  });
  return clusters;
}

double min_gap(const CVec& eigenvalues) {
  const int d = static_cast<int>(eigenvalues.size());
  if (d < 2) return 0;
  double g = std::numeric_limits<double>::infinity();
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) g = std::min(g, std::abs(eigenvalues[k] - eigenvalues[l]));
  return g;
}

}  // namespace

ComplexMatrix SpectralResolution::reconstruct() const {
  ComplexMatrix out(dim());
  for (int k = 0; k < d(); ++k) out += projections[k] * eigenvalues[k];
  return out;
}

SpectralResolution resolve(const ComplexMatrix& a, double cluster_tol) {
  if (cluster_tol < 0) cluster_tol = 1e-8 * std::max(1.0, a.frobenius_norm());
  const HermEig e = herm_eig(a);
  const int n = a.dim();

  CVec vals(n);
  for (int i = 0; i < n; ++i) vals[i] = e.eigenvalues[i];
  const std::vector<int> label = cluster_values(vals, cluster_tol);
  const std::vector<Cluster> clusters = build_clusters(vals, label);

  SpectralResolution res;
  res.oblique = false;
  for (const Cluster& c : clusters) {
    res.eigenvalues.push_back(cplx(c.mean.real(), 0));
    res.multiplicities.push_back(static_cast<int>(c.members.size()));
    ComplexMatrix p(n);
    for (int i : c.members) {
      CVec col(n);
      for (int r = 0; r < n; ++r) col[r] = e.eigenvectors(r, i);
      add_outer(p, col, col);
    }
    res.projections.push_back(std::move(p));
  }
  res.gap = min_gap(res.eigenvalues);
  return res;
}

SpectralResolution riesz_resolve(const ComplexMatrix& a, double cluster_tol) {
  if (cluster_tol < 0) cluster_tol = 1e-8 * std::max(1.0, a.frobenius_norm());
  const GenEig e = gen_eig(a);
  const int n = a.dim();

  const std::vector<int> label = cluster_values(e.eigenvalues, cluster_tol);
  const std::vector<Cluster> clusters = build_clusters(e.eigenvalues, label);
  const ComplexMatrix sinv = invert(e.eigenvectors);

  SpectralResolution res;
  res.oblique = true;
  for (const Cluster& c : clusters) {
    res.eigenvalues.push_back(c.mean);
    res.multiplicities.push_back(static_cast<int>(c.members.size()));
    // P_k = S E_k S^{-1}: sum of rank-one (col i of S) x (row i of S^{-1}).
    ComplexMatrix p(n);
    for (int i : c.members)
      for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) p(r, col) += e.eigenvectors(r, i) * sinv(i, col);
    res.projections.push_back(std::move(p));
  }
  res.gap = min_gap(res.eigenvalues);
  return res;
}

ComplexMatrix reduced_resolvent(const SpectralResolution& res, int ell) {
  if (ell < 0 || ell >= res.d()) throw DimensionMismatchError("reduced_resolvent: index");
  ComplexMatrix s(res.dim());
  for (int k = 0; k < res.d(); ++k) {
    if (k == ell) continue;
    s += res.projections[k] * (1.0 / (res.eigenvalues[k] - res.eigenvalues[ell]));
  }
  return s;
}

PolyCoeffs poly_coeffs(const SpectralResolution& res, const ComplexMatrix& m, double tol) {
  if (res.dim() != m.dim()) throw DimensionMismatchError("poly_coeffs: dims");
  if (tol < 0) tol = 1e-8 * std::max(op_norm(m), 1e-300);
  const int d = res.d();

  // Block means m_k = tr(P_k M P_k) / d_k.
  CVec y(d);
  for (int k = 0; k < d; ++k) {
    const ComplexMatrix pmp = res.projections[k] * m * res.projections[k];
    y[k] = pmp.trace() / static_cast<double>(res.multiplicities[k]);
  }

  // Newton interpolation through (e_k, m_k), then Newton-to-monomial
  // expansion by synthetic division: the progressive form of the
  // Vandermonde solve.
  CVec c = y;
  for (int level = 1; level < d; ++level)
    for (int j = d - 1; j >= level; --j)
      c[j] = (c[j] - c[j - 1]) / (res.eigenvalues[j] - res.eigenvalues[j - level]);
  for (int k = d - 2; k >= 0; --k)
    for (int j = k; j <= d - 2; ++j) c[j] -= res.eigenvalues[k] * c[j + 1];

  // Residual against the reconstructed operator.
  const ComplexMatrix h = res.reconstruct();
  ComplexMatrix acc(m.dim());
  ComplexMatrix power = ComplexMatrix::identity(m.dim());
  for (int j = 0; j < d; ++j) {
    acc += power * c[j];
    if (j + 1 < d) power = power * h;
  }
  PolyCoeffs out;
  out.coefficients = std::move(c);
  out.residual = op_norm(acc - m);
  if (out.residual > tol)
    throw NotRobustError("poly_coeffs: residual above tolerance, M is not a polynomial in A",
                         out.residual);
  return out;
}

}  // namespace qkam
