#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qkam/errors.hpp"
#include "qkam/io.hpp"
#include "qkam/lindblad.hpp"
#include "qkam/matfun.hpp"
#include "qkam/models.hpp"
#include "qkam/rng.hpp"
#include "qkam/spectral.hpp"

using namespace qkam;

namespace {

// Hermitian matrix with a prescribed (possibly degenerate) spectrum in a
// random eigenbasis; the independent route for degenerate-cluster checks.
ComplexMatrix with_spectrum(const std::vector<double>& eigs, uint64_t seed) {
  const int n = static_cast<int>(eigs.size());
  const ComplexMatrix u = herm_eig(random_hermitian(n, seed)).eigenvectors;
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    CVec col(n);
    for (int i = 0; i < n; ++i) col[i] = u(i, k);
    add_outer(out, col, col, eigs[k]);
  }
  return out;
}

void check_resolution_invariants(const SpectralResolution& res, const ComplexMatrix& a,
                                 double tol) {
  const int n = a.dim();
  int total = 0;
  ComplexMatrix sum(n);
  for (int k = 0; k < res.d(); ++k) {
    total += res.multiplicities[k];
    sum += res.projections[k];
    for (int l = 0; l < res.d(); ++l) {
      const ComplexMatrix prod = res.projections[k] * res.projections[l];
      const ComplexMatrix want = (k == l) ? res.projections[l] : ComplexMatrix(n);
      CHECK(op_norm(prod - want) <= tol);
    }
    if (!res.oblique) CHECK(res.projections[k].herm_defect() <= tol);
  }
  CHECK(total == n);
  CHECK(op_norm(sum - ComplexMatrix::identity(n)) <= tol);
  CHECK(op_norm(res.reconstruct() - a) <= tol * std::max(1.0, op_norm(a)));
}

}  // namespace

TEST_CASE("resolve: degenerate diagonal example") {
  const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{1, 1, 2});
  const SpectralResolution res = resolve(a);
  REQUIRE(res.d() == 2);
  CHECK(res.multiplicities[0] == 2);
  CHECK(res.multiplicities[1] == 1);
  CHECK(res.gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(op_norm(res.projections[0] - ComplexMatrix::diagonal(std::vector<double>{1, 1, 0})) <
        1e-12);
  CHECK(op_norm(res.projections[1] - ComplexMatrix::diagonal(std::vector<double>{0, 0, 1})) <
        1e-12);
}

TEST_CASE("resolve: sigma_z") {
  const SpectralResolution res = resolve(pauli_z());
  REQUIRE(res.d() == 2);
  CHECK(res.gap == doctest::Approx(2.0));
  CHECK(res.multiplicities[0] == 1);
  CHECK(res.multiplicities[1] == 1);
  CHECK(std::abs(res.projections[0].trace() - cplx(1, 0)) < 1e-12);
}

TEST_CASE("resolve: Heisenberg N=4 invariants") {
  const ComplexMatrix h = heisenberg_chain(4, 1.0);
  const SpectralResolution res = resolve(h);
  int total = 0;
  for (int m : res.multiplicities) total += m;
  CHECK(total == 16);
  check_resolution_invariants(res, h, 1e-9);
}

TEST_CASE("resolve: ambiguous clustering raises") {
  const ComplexMatrix a =
      ComplexMatrix::diagonal(std::vector<double>{0.0, 5e-8, 1.0});
  CHECK_THROWS_AS(resolve(a, 1e-8), AmbiguousClusteringError);
}

TEST_CASE("resolve + riesz_resolve invariants on a seeded ensemble") {
  Rng seeds(2024);
  int count = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const uint64_t seed = seeds.next_u64() % 100000;
    const int dim = 4 + static_cast<int>(seeds.next_u64() % 13);  // 4..16
    ComplexMatrix a;
    if (rep % 3 == 0) {
      // constructed degenerate spectrum
      std::vector<double> eigs(dim);
      Rng r(seed, 7);
      double v = -1;
      for (int i = 0; i < dim; ++i) {
        if (i == 0 || r.next_uniform() > 0.4) v += 0.2 + r.next_uniform();
        eigs[i] = v;
      }
      a = with_spectrum(eigs, seed + 1);
    } else {
      a = random_hermitian(dim, seed);
    }
    const SpectralResolution res = resolve(a);
    check_resolution_invariants(res, a, 1e-9);

    // reduced resolvent identity and norm bound on every cluster
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    for (int l = 0; l < res.d(); ++l) {
      const ComplexMatrix s = reduced_resolvent(res, l);
      CHECK(op_norm(s * res.projections[l]) <= 1e-9);
      CHECK(op_norm(res.projections[l] * s) <= 1e-9);
      const ComplexMatrix lhs = (a - id * res.eigenvalues[l]) * s;
      CHECK(op_norm(lhs - (id - res.projections[l])) <= 1e-9);
      if (res.d() >= 2) CHECK(op_norm(s) <= 1.0 / res.gap + 1e-9);
    }
    ++count;
  }
  CHECK(count == 200);
}

TEST_CASE("reduced_resolvent: worked two-level and degenerate examples") {
  // sigma_z at the -1 eigenvalue: S = P_+ / 2 = diag(1/2, 0)
  const SpectralResolution rz = resolve(pauli_z());
  const ComplexMatrix s = reduced_resolvent(rz, 0);
  CHECK(op_norm(s - ComplexMatrix::diagonal(std::vector<double>{0.5, 0.0})) < 1e-12);

  // diag(1,1,2) at the eigenvalue-1 cluster: S = P_2 / (2 - 1)
  const SpectralResolution rd = resolve(ComplexMatrix::diagonal(std::vector<double>{1, 1, 2}));
  const ComplexMatrix s2 = reduced_resolvent(rd, 0);
  CHECK(op_norm(s2 - ComplexMatrix::diagonal(std::vector<double>{0, 0, 1})) < 1e-12);
}

TEST_CASE("riesz_resolve: agrees with resolve on Hermitian input") {
  const ComplexMatrix a = with_spectrum({-1, -1, 0.5, 2}, 99);
  const SpectralResolution hr = resolve(a);
  const SpectralResolution rr = riesz_resolve(a);
  REQUIRE(hr.d() == rr.d());
  for (int k = 0; k < hr.d(); ++k) {
    CHECK(std::abs(hr.eigenvalues[k] - rr.eigenvalues[k]) < 1e-9);
    CHECK(op_norm(hr.projections[k] - rr.projections[k]) < 1e-9);
  }
}

TEST_CASE("riesz_resolve: dephasing Lindbladian clusters") {
  const Superoperator l = dephasing(1.0, 1.0);
  const SpectralResolution res = riesz_resolve(l.matrix);
  REQUIRE(res.d() == 3);
  // ascending by (Re, Im): -1-i, -1+i, 0 (x2)
  CHECK(std::abs(res.eigenvalues[0] - cplx(-1, -1)) < 1e-10);
  CHECK(std::abs(res.eigenvalues[1] - cplx(-1, 1)) < 1e-10);
  CHECK(std::abs(res.eigenvalues[2]) < 1e-10);
  CHECK(res.multiplicities[0] == 1);
  CHECK(res.multiplicities[1] == 1);
  CHECK(res.multiplicities[2] == 2);
  check_resolution_invariants(res, l.matrix, 1e-9);
}

TEST_CASE("riesz_resolve: oblique ranks for diag(2,2,5)") {
  const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{2, 2, 5});
  const SpectralResolution res = riesz_resolve(a);
  REQUIRE(res.d() == 2);
  CHECK(std::abs(res.projections[0].trace() - cplx(2, 0)) < 1e-10);
  CHECK(std::abs(res.projections[1].trace() - cplx(1, 0)) < 1e-10);
}

TEST_CASE("poly_coeffs: identity observable") {
  const SpectralResolution res = resolve(pauli_z());
  const PolyCoeffs pc = poly_coeffs(res, ComplexMatrix::identity(2));
  REQUIRE(pc.coefficients.size() == 2);
  CHECK(std::abs(pc.coefficients[0] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(pc.coefficients[1]) < 1e-12);
  CHECK(pc.residual < 1e-12);
}

TEST_CASE("poly_coeffs: projection P_+ on sigma_z") {
  const SpectralResolution res = resolve(pauli_z());
  const ComplexMatrix p_plus = 0.5 * (ComplexMatrix::identity(2) + pauli_z());
  const PolyCoeffs pc = poly_coeffs(res, p_plus);
  CHECK(std::abs(pc.coefficients[0] - cplx(0.5, 0)) < 1e-12);
  CHECK(std::abs(pc.coefficients[1] - cplx(0.5, 0)) < 1e-12);
}

TEST_CASE("poly_coeffs: sigma_x against sigma_z is not robust") {
  const SpectralResolution res = resolve(pauli_z());
  CHECK_THROWS_AS(poly_coeffs(res, pauli_x()), NotRobustError);
}

TEST_CASE("poly_coeffs: round trip on random polynomials") {
  Rng seeds(77);
  for (int rep = 0; rep < 30; ++rep) {
    const int dim = 4 + static_cast<int>(seeds.next_u64() % 9);  // 4..12
    const ComplexMatrix a = random_hermitian(dim, 3000 + rep);
    const SpectralResolution res = resolve(a);
    const int d = res.d();
    Rng coeff(500 + rep);
    CVec c(d);
    for (int j = 0; j < d; ++j) c[j] = coeff.next_gaussian();
    ComplexMatrix m(dim);
    ComplexMatrix power = ComplexMatrix::identity(dim);
    for (int j = 0; j < d; ++j) {
      m += power * c[j];
      if (j + 1 < d) power = power * a;
    }
    const PolyCoeffs pc = poly_coeffs(res, m);
    for (int j = 0; j < d; ++j) CHECK(std::abs(pc.coefficients[j] - c[j]) < 1e-7);
    CHECK(pc.residual <= 1e-7);
  }
}

TEST_CASE("resolution JSON round trip") {
  const SpectralResolution res = resolve(with_spectrum({-1, -1, 2, 3}, 13));
  const nlohmann::json j = resolution_to_json(res);
  CHECK(j["multiplicities"].size() == 3);
  const ComplexMatrix p0 = matrix_from_json(j["projections"][0]);
  CHECK(op_norm(p0 - res.projections[0]) < 1e-15);
}
