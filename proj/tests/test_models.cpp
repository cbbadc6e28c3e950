#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qkam/dynamics.hpp"
#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"
#include "qkam/models.hpp"
#include "qkam/spectral.hpp"
#include "qkam/symmetry.hpp"

using namespace qkam;

TEST_CASE("pauli_op: single site") {
  CHECK(op_norm(pauli_op(1, {{0, PauliAxis::X}}) - pauli_x()) < 1e-15);
  CHECK(op_norm(pauli_op(2, {{0, PauliAxis::Z}, {1, PauliAxis::Z}}) -
                ComplexMatrix::diagonal(std::vector<double>{1, -1, -1, 1})) < 1e-15);
}

TEST_CASE("pauli_op: sigma_x sigma_x is the anti-diagonal") {
  const ComplexMatrix xx = pauli_op(2, {{0, PauliAxis::X}, {1, PauliAxis::X}});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(std::abs(xx(r, c) - (r + c == 3 ? cplx(1, 0) : cplx(0, 0))) < 1e-15);
}

TEST_CASE("pauli_op: Hermitian, squares to identity, errors") {
  const ComplexMatrix p = pauli_op(3, {{0, PauliAxis::Y}, {2, PauliAxis::Z}});
  CHECK(p.herm_defect() == 0.0);
  CHECK(op_norm(p * p - ComplexMatrix::identity(8)) < 1e-14);
  CHECK_THROWS_AS(pauli_op(2, {{2, PauliAxis::X}}), SiteOutOfRangeError);
  CHECK_THROWS_AS(pauli_op(2, {{0, PauliAxis::X}, {0, PauliAxis::Z}}), DuplicateSiteError);
}

TEST_CASE("heisenberg_chain: symmetries") {
  const ComplexMatrix h = heisenberg_chain(4, 1.0);
  CHECK(h.dim() == 16);
  CHECK(h.herm_defect() == 0.0);
  for (PauliAxis ax : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
    CHECK(op_norm(commutator(h, magnetization(4, ax))) < 1e-12);
  CHECK(op_norm(commutator(h, cyclic_shift(4))) < 1e-12);

  const ComplexMatrix h2 = heisenberg_chain(2, 1.0);
  CHECK(op_norm(commutator(h2, magnetization(2, PauliAxis::Z))) < 1e-12);
}

TEST_CASE("boost_charges: base case, Hermiticity, translation invariance") {
  const std::vector<ComplexMatrix> q = boost_charges(4, 4, 1.0);
  REQUIRE(q.size() == 3);  // Q_2, Q_3, Q_4
  CHECK(op_norm(q[0] - heisenberg_chain(4, 1.0)) == 0.0);
  const ComplexMatrix t = cyclic_shift(4);
  for (const ComplexMatrix& qn : q) {
    CHECK(qn.herm_defect() < 1e-11);
    CHECK(op_norm(commutator(qn, t)) < 1e-10 * std::max(1.0, op_norm(qn)));
  }
  // conservation defect is reported and compared, not assumed
  for (size_t i = 1; i < q.size(); ++i) {
    const double defect = op_norm(commutator(q[0], q[i]));
    MESSAGE("||[H, Q_", i + 2, "]|| = ", defect);
    CHECK(defect < 1e-10 * std::max(1.0, op_norm(q[0]) * op_norm(q[i])));
  }
  // mutual commutation with the magnetization (the Abelian family)
  CHECK(op_norm(commutator(q[1], magnetization(4, PauliAxis::Z))) <
        1e-10 * std::max(1.0, op_norm(q[1])));

  // density extraction does not depend on the auxiliary-chain margin
  const std::vector<ComplexMatrix> q3only = boost_charges(4, 3, 1.0);
  CHECK(op_norm(q3only[1] - q[1]) < 1e-11 * std::max(1.0, op_norm(q[1])));
}

TEST_CASE("boost_charges: none of the charges are robust") {
  const ComplexMatrix h = heisenberg_chain(4, 1.0);
  const SpectralResolution res = resolve(h);
  const std::vector<ComplexMatrix> q = boost_charges(4, 4, 1.0);
  // Q_3 is conserved but fragile (not robust)
  const RobustnessClass rc = classify(res, q[1]);
  CHECK((rc.label == RobustnessLabel::Fragile || rc.label == RobustnessLabel::Mixed));
  CHECK(rc.fragile_norm > 1e-3 * op_norm(q[1]));
}

TEST_CASE("magnetization: norm and diagonal structure") {
  CHECK(op_norm(magnetization(1, PauliAxis::Z) - pauli_z()) < 1e-15);
  const ComplexMatrix q1 = magnetization(4, PauliAxis::Z);
  CHECK(op_norm(q1) == doctest::Approx(4.0).epsilon(1e-12));
  // diagonal entries count (ups - downs)
  for (int b = 0; b < 16; ++b) {
    int ups = 0;
    for (int s = 0; s < 4; ++s) ups += (b >> s) & 1;
    CHECK(std::abs(q1(b, b) - cplx(4 - 2 * ups, 0)) < 1e-14);
  }
}

TEST_CASE("magnetization: collective rotation under the tilted perturbation") {
  // <Q_1>_t under H + eps Qtilde_1 from the fully polarized state is
  // N cos(2 eps t): the rotated magnetization factorizes site by site.
  const int n = 4;
  const ComplexMatrix h = heisenberg_chain(n, 1.0);
  const ComplexMatrix q1 = magnetization(n, PauliAxis::Z);
  const ComplexMatrix q1t = magnetization(n, PauliAxis::X);
  CHECK(op_norm(commutator(h, q1t)) < 1e-12);  // rotational invariance
  const double eps = 0.02;
  CVec up(16, cplx(0, 0));
  up[0] = 1;  // site value 0 = spin up in this basis
  const TimeGrid grid = TimeGrid::linear(1000.0, 500);
  const Trajectory tr = expectation_traj(h + eps * q1t, q1, up, grid);
  for (int i = 0; i < grid.size(); ++i)
    CHECK(std::abs(tr.values[i].real() - n * std::cos(2.0 * eps * grid.times[i])) < 1e-8);
}

TEST_CASE("fragile_example: structure") {
  const FragileExample fx = fragile_example(0.0, 1.0, -1.0);
  CHECK(op_norm(commutator(fx.h, fx.m)) == 0.0);
  CHECK(fx.delta == 2.0);
  CHECK(op_norm(fx.v - pauli_x()) == 0.0);
  CHECK(vec_norm(fx.psi0) == 1.0);
  CHECK_THROWS_AS(fragile_example(0.0, -1.0, 1.0), DomainError);
}

TEST_CASE("zeno_saturation_sequence: closed forms and monotonicity") {
  const ZenoSaturationPoint p1 = zeno_saturation_sequence(1);
  CHECK(p1.epsilon == doctest::Approx(std::sqrt(7.0) / 3.0).epsilon(1e-15));
  CHECK(p1.time == doctest::Approx(3.0 * M_PI).epsilon(1e-12));
  const ZenoSaturationPoint p2 = zeno_saturation_sequence(2);
  CHECK(p2.epsilon == doctest::Approx(std::sqrt(11.0) / 5.0).epsilon(1e-15));
  CHECK(p2.time == doctest::Approx(5.0 * M_PI).epsilon(1e-12));
  double prev = p1.epsilon;
  for (int n = 2; n <= 30; ++n) {
    const ZenoSaturationPoint p = zeno_saturation_sequence(n);
    CHECK(p.epsilon < prev);
    // identity sqrt(1 + eps_n^2) = 2(n+1)/(2n+1), hence t_n = (2n+1) pi
    CHECK(std::sqrt(1.0 + p.epsilon * p.epsilon) ==
          doctest::Approx(2.0 * (n + 1) / (2.0 * n + 1)).epsilon(1e-14));
    CHECK(p.time == doctest::Approx((2.0 * n + 1) * M_PI).epsilon(1e-10));
    prev = p.epsilon;
  }
}

TEST_CASE("N = 6 envelope: resolve, classify, charges at dim 64") {
  const ComplexMatrix h = heisenberg_chain(6, 1.0);
  REQUIRE(h.dim() == 64);
  const SpectralResolution res = resolve(h);
  CHECK(res.d() >= 10);
  CHECK(res.gap > 0.05);
  CHECK(op_norm(res.reconstruct() - h) < 1e-12 * op_norm(h));

  const RobustnessClass rc = classify(res, magnetization(6, PauliAxis::Z));
  CHECK(rc.label == RobustnessLabel::Fragile);
  CHECK(rc.fragile_norm == doctest::Approx(6.0).epsilon(1e-10));

  const std::vector<ComplexMatrix> q = boost_charges(6, 4, 1.0);
  CHECK(op_norm(commutator(q[0], q[1])) < 1e-10);
  CHECK(op_norm(commutator(q[0], q[2])) < 1e-10);
}

TEST_CASE("fragile vs robust contrast at N = 4") {
  ComplexMatrix h = heisenberg_chain(4, 1.0);
  h *= 1.0 / op_norm(h);
  const SpectralResolution res = resolve(h);
  const ComplexMatrix v = random_hermitian(16, 777);
  const ComplexMatrix m = random_hermitian(16, 778);
  const ObservableDecomposition dec = decompose_observable(res, m);
  const CVec psi0 = random_state(16, 779);
  const double eps = 0.02;

  const TimeGrid grid = TimeGrid::linear(1000.0, 800);
  const Trajectory rob = expectation_traj(h + eps * v, dec.robust, psi0, grid);
  double dev = 0;
  for (const cplx& x : rob.values) dev = std::max(dev, std::abs(x.real() - rob.values[0].real()));
  CHECK(dev <= 10.0 * eps);

  // Q_1 swings by its full scale N under the tilted-magnetization drive
  const ComplexMatrix q1 = magnetization(4, PauliAxis::Z);
  const ComplexMatrix q1t = magnetization(4, PauliAxis::X);
  CVec up(16, cplx(0, 0));
  up[0] = 1;
  const Trajectory frag = expectation_traj(heisenberg_chain(4, 1.0) + eps * q1t, q1, up, grid);
  double swing = 0;
  for (const cplx& x : frag.values)
    swing = std::max(swing, std::abs(x.real() - frag.values[0].real()));
  CHECK(swing >= 4.0);
}
