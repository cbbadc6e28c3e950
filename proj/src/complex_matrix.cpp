#include "qkam/complex_matrix.hpp"

#include <cmath>
#include <string>

#include "qkam/errors.hpp"

namespace qkam {

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVec& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const int n = static_cast<int>(rows.size());
  ComplexMatrix m(n);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatchError("from_rows: ragged or non-square initializer");
    int c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(r, c));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0;
  for (const cplx& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0;
  for (const cplx& x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& x : a_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double ComplexMatrix::herm_defect() const {
  double s = 0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) s += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator+=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator-=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& x : a_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const int n = a.dim();
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx(0, 0)) continue;
      for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  }
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& a) {
  ComplexMatrix m = a;
  return m *= cplx(-1, 0);
}

CVec ComplexMatrix::apply(const CVec& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw DimensionMismatchError("apply: vector length != matrix dim");
  CVec out(dim_, cplx(0, 0));
  for (int r = 0; r < dim_; ++r) {
    cplx s = 0;
    for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

CVec ComplexMatrix::apply_dagger(const CVec& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw DimensionMismatchError("apply_dagger: vector length != matrix dim");
  CVec out(dim_, cplx(0, 0));
  for (int c = 0; c < dim_; ++c) {
    cplx s = 0;
    for (int r = 0; r < dim_; ++r) s += std::conj((*this)(r, c)) * v[r];
    out[c] = s;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix m(na * nb);
  for (int ra = 0; ra < na; ++ra)
    for (int ca = 0; ca < na; ++ca) {
      const cplx f = a(ra, ca);
      if (f == cplx(0, 0)) continue;
      for (int rb = 0; rb < nb; ++rb)
        for (int cb = 0; cb < nb; ++cb) m(ra * nb + rb, ca * nb + cb) = f * b(rb, cb);
    }
  return m;
}

double vec_norm(const CVec& v) {
  double s = 0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cplx vec_dot(const CVec& a, const CVec& b) {
  cplx s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVec vec_scale(const CVec& v, cplx s) {
  CVec out = v;
  for (cplx& x : out) x *= s;
  return out;
}

void add_outer(ComplexMatrix& m, const CVec& v, const CVec& w, cplx s) {
  const int n = m.dim();
  for (int r = 0; r < n; ++r) {
    const cplx f = s * v[r];
    for (int c = 0; c < n; ++c) m(r, c) += f * std::conj(w[c]);
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where) {
  if (a.dim() != b.dim())
    throw DimensionMismatchError(std::string(where) + ": dims " + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()));
}

}  // namespace qkam
