#include "qkam/symmetry.hpp"

#include <cmath>

#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"

namespace qkam {

ComplexMatrix zeno_project(const SpectralResolution& res, const ComplexMatrix& v) {
  if (res.dim() != v.dim()) throw DimensionMismatchError("zeno_project: dims");
  ComplexMatrix out(v.dim());
  for (int k = 0; k < res.d(); ++k) out += res.projections[k] * v * res.projections[k];
  return out;
}

ComplexMatrix offdiag_part(const SpectralResolution& res, const ComplexMatrix& v) {
  return v - zeno_project(res, v);
}

ObservableDecomposition decompose_observable(const SpectralResolution& res,
                                             const ComplexMatrix& m, double herm_tol) {
  if (res.dim() != m.dim()) throw DimensionMismatchError("decompose_observable: dims");
  if (herm_tol < 0) herm_tol = 1e-10 * std::max(1.0, m.frobenius_norm());
  if (m.herm_defect() > herm_tol)
    throw NotHermitianError("decompose_observable: M not Hermitian");

  ObservableDecomposition out;
  const ComplexMatrix diag = zeno_project(res, m);
  out.noncons = m - diag;
  out.robust = ComplexMatrix(m.dim());
  for (int k = 0; k < res.d(); ++k) {
    const cplx mean = (res.projections[k] * m * res.projections[k]).trace() /
                      static_cast<double>(res.multiplicities[k]);
    out.robust += res.projections[k] * mean;
  }
  out.fragile = diag - out.robust;
  out.residual = op_norm(m - (out.noncons + out.robust + out.fragile));
  return out;
}

std::string to_string(RobustnessLabel label) {
  switch (label) {
    case RobustnessLabel::Robust: return "Robust";
    case RobustnessLabel::Fragile: return "Fragile";
    case RobustnessLabel::NonConserved: return "NonConserved";
    case RobustnessLabel::Mixed: return "Mixed";
  }
  return "?";
}

RobustnessClass classify(const SpectralResolution& res, const ComplexMatrix& m, double tol) {
  const ObservableDecomposition dec = decompose_observable(res, m);
  RobustnessClass out;
  out.noncons_norm = op_norm(dec.noncons);
  out.robust_norm = op_norm(dec.robust);
  out.fragile_norm = op_norm(dec.fragile);
  const double threshold = tol * std::max(1.0, op_norm(m));
  const bool has_noncons = out.noncons_norm > threshold;
  const bool has_robust = out.robust_norm > threshold;
  const bool has_fragile = out.fragile_norm > threshold;
  const int present = int(has_noncons) + int(has_robust) + int(has_fragile);
  if (present >= 2)
    out.label = RobustnessLabel::Mixed;
  else if (has_noncons)
    out.label = RobustnessLabel::NonConserved;
  else if (has_fragile)
    out.label = RobustnessLabel::Fragile;
  else
    out.label = RobustnessLabel::Robust;
  return out;
}

}  // namespace qkam
