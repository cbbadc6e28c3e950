#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qkam {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense square complex matrix, row-major. The single value type carried
// through the whole library: Hamiltonians, observables, states, unitaries
// and vectorized superoperators.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(const CVec& entries);
  static ComplexMatrix diagonal(const std::vector<double>& entries);
  // Row-major literal, for tests and small constructors. Throws on ragged input.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  // ||A - A^dagger||_F, the Hermiticity defect.
  double herm_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s, 0); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s, 0); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a);

  CVec apply(const CVec& v) const;            // A v
  CVec apply_dagger(const CVec& v) const;     // A^dagger v

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector helpers.
double vec_norm(const CVec& v);
cplx vec_dot(const CVec& a, const CVec& b);  // conjugate-linear in the first argument
CVec vec_scale(const CVec& v, cplx s);

// Rank-one accumulation: m += s * v w^dagger.
void add_outer(ComplexMatrix& m, const CVec& v, const CVec& w, cplx s = cplx(1, 0));

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where);

}  // namespace qkam
