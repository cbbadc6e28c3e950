#include "qkam/models.hpp"

#include <cmath>
#include <map>
#include <set>

#include "qkam/errors.hpp"
#include "qkam/matfun.hpp"
#include "qkam/rng.hpp"

namespace qkam {

ComplexMatrix pauli_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }
ComplexMatrix pauli_y() {
  return ComplexMatrix::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}});
}
ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

ComplexMatrix pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return pauli_x();
    case PauliAxis::Y: return pauli_y();
    case PauliAxis::Z: return pauli_z();
  }
  throw DomainError("pauli: bad axis");
}

ComplexMatrix pauli_op(int n_sites, const std::vector<std::pair<int, PauliAxis>>& factors) {
  if (n_sites < 1 || n_sites > 6) throw DomainError("pauli_op: need 1 <= N <= 6");
  std::set<int> seen;
  for (const auto& [site, axis] : factors) {
    (void)axis;
    if (site < 0 || site >= n_sites) throw SiteOutOfRangeError("pauli_op: site out of range");
    if (!seen.insert(site).second) throw DuplicateSiteError("pauli_op: duplicate site");
  }
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int s = 0; s < n_sites; ++s) {
    ComplexMatrix factor = ComplexMatrix::identity(2);
    for (const auto& [site, axis] : factors)
      if (site == s) factor = pauli(axis);
    out = kron(out, factor);
  }
  return out;
}

namespace {

ComplexMatrix bond(int n_sites, int a, int b) {
  ComplexMatrix out(1 << n_sites);
  for (PauliAxis ax : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
    out += pauli_op(n_sites, {{a, ax}, {b, ax}});
  return out;
}

// --- Pauli-string algebra on an open auxiliary chain ---
//
// The boost recursion Q_{n+1} = -i[B, Q_n] is only valid on the infinite
// chain: on a ring the site weights in B are not periodic and the naive
// commutator picks up a boundary term ~ N [h_N, h_1] that breaks translation
// invariance. We therefore run the recursion on an open chain long enough
// that mid-chain densities are bulk, read off the local density by
// leftmost-site assignment, and periodize it onto the ring.

using PString = std::vector<uint8_t>;  // 0 = I, 1 = X, 2 = Y, 3 = Z per site

struct StringSum {
  std::map<PString, cplx> terms;
};

void ss_add(StringSum& s, const PString& p, cplx c) {
  auto it = s.terms.find(p);
  if (it == s.terms.end()) {
    if (std::abs(c) > 1e-12) s.terms.emplace(p, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= 1e-12) s.terms.erase(it);
  }
}

// sigma^a sigma^b = phase * sigma^c
std::pair<uint8_t, cplx> pauli_mul1(uint8_t a, uint8_t b) {
  if (a == 0) return {b, 1.0};
  if (b == 0) return {a, 1.0};
  if (a == b) return {0, 1.0};
  // cyclic: XY = iZ, YZ = iX, ZX = iY; anti-cyclic picks up -i
  const uint8_t c = static_cast<uint8_t>(6 - a - b);
  const bool cyclic = (b - a + 3) % 3 == 1;
  return {c, cyclic ? cplx(0, 1) : cplx(0, -1)};
}

StringSum ss_mul(const StringSum& a, const StringSum& b) {
  StringSum out;
  for (const auto& [pa, ca] : a.terms)
    for (const auto& [pb, cb] : b.terms) {
      cplx c = ca * cb;
      PString p(pa.size());
      for (size_t i = 0; i < pa.size(); ++i) {
        const auto [code, phase] = pauli_mul1(pa[i], pb[i]);
        p[i] = code;
        c *= phase;
      }
      ss_add(out, p, c);
    }
  return out;
}

StringSum ss_commutator(const StringSum& a, const StringSum& b) {
  StringSum out = ss_mul(a, b);
  const StringSum ba = ss_mul(b, a);
  for (const auto& [p, c] : ba.terms) ss_add(out, p, -c);
  return out;
}

// sum_axis sigma_a^axis sigma_b^axis as strings on m sites
void add_bond_strings(StringSum& s, int m, int a, int b, cplx weight) {
  for (uint8_t ax = 1; ax <= 3; ++ax) {
    PString p(m, 0);
    p[a] = ax;
    p[b] = ax;
    ss_add(s, p, weight);
  }
}

// Mid-chain local density of a translation-covariant string sum: all strings
// whose leftmost non-identity site is x0.
StringSum density_at(const StringSum& q, int x0) {
  StringSum out;
  for (const auto& [p, c] : q.terms) {
    int left = -1;
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] != 0) {
        left = static_cast<int>(i);
        break;
      }
    if (left == x0) ss_add(out, p, c);
  }
  return out;
}

// Sum the density over all ring translations (site indices mod n_sites).
ComplexMatrix periodize(const StringSum& density, int x0, int n_sites) {
  const int dim = 1 << n_sites;
  ComplexMatrix out(dim);
  for (int shift = 0; shift < n_sites; ++shift) {
    for (const auto& [p, c] : density.terms) {
      std::vector<std::pair<int, PauliAxis>> factors;
      for (size_t i = x0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        const int site = (static_cast<int>(i) - x0 + shift) % n_sites;
        const PauliAxis ax = p[i] == 1   ? PauliAxis::X
                             : p[i] == 2 ? PauliAxis::Y
                                         : PauliAxis::Z;
        factors.emplace_back(site, ax);
      }
      out += pauli_op(n_sites, factors) * c;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix heisenberg_chain(int n_sites, double j) {
  if (n_sites < 2 || n_sites > 6) throw DomainError("heisenberg_chain: need 2 <= N <= 6");
  ComplexMatrix h(1 << n_sites);
  for (int n = 0; n < n_sites; ++n) h += bond(n_sites, n, (n + 1) % n_sites);
  return h * (-j);
}

std::vector<ComplexMatrix> boost_charges(int n_sites, int n_max, double j) {
  if (n_max < 3 || n_max > n_sites) throw DomainError("boost_charges: need 3 <= n_max <= N");

  // Open chain wide enough that the extraction window never sees an edge.
  const int m = 4 * n_max + 4;
  const int x0 = m / 2;

  StringSum h_open, boost;
  for (int bnd = 0; bnd + 1 < m; ++bnd) {
    add_bond_strings(h_open, m, bnd, bnd + 1, -j);
    add_bond_strings(boost, m, bnd, bnd + 1, 0.5 * (bnd + 1));
  }

  std::vector<ComplexMatrix> out;
  out.push_back(heisenberg_chain(n_sites, j));  // Q_2 = H exactly
  StringSum q = h_open;
  for (int order = 3; order <= n_max; ++order) {
    StringSum next = ss_commutator(boost, q);
    for (auto& [p, c] : next.terms) c *= cplx(0, -1);
    q = std::move(next);
    out.push_back(periodize(density_at(q, x0), x0, n_sites));
  }
  return out;
}

ComplexMatrix magnetization(int n_sites, PauliAxis axis) {
  if (n_sites < 1 || n_sites > 6) throw DomainError("magnetization: need 1 <= N <= 6");
  ComplexMatrix out(1 << n_sites);
  for (int n = 0; n < n_sites; ++n) out += pauli_op(n_sites, {{n, axis}});
  return out;
}

ComplexMatrix cyclic_shift(int n_sites) {
  const int dim = 1 << n_sites;
  ComplexMatrix t(dim);
  for (int b = 0; b < dim; ++b) {
    // site 0 holds the highest bit; shift site n -> n+1 cyclically
    const int low = b & 1;
    const int shifted = (b >> 1) | (low << (n_sites - 1));
    t(shifted, b) = 1;
  }
  return t;
}

FragileExample fragile_example(double e, double m1, double m2) {
  if (!(m1 > m2)) throw DomainError("fragile_example: need m1 > m2");
  FragileExample out;
  out.h = ComplexMatrix::identity(2) * e;
  out.m = ComplexMatrix::diagonal(std::vector<double>{m1, m2});
  out.v = pauli_x();
  out.delta = m1 - m2;
  out.psi0 = {cplx(1, 0), cplx(0, 0)};
  return out;
}

ZenoSaturationPoint zeno_saturation_sequence(int n) {
  if (n < 1) throw DomainError("zeno_saturation_sequence: need n >= 1");
  ZenoSaturationPoint out;
  out.epsilon = std::sqrt(4.0 * n + 3.0) / (2.0 * n + 1.0);
  out.time = M_PI / (std::sqrt(1.0 + out.epsilon * out.epsilon) - 1.0);
  return out;
}

ComplexMatrix random_hermitian(int dim, uint64_t seed) {
  if (dim < 2) throw DomainError("random_hermitian: dim must be >= 2");
  Rng rng(seed, /*stream=*/0x48);
  ComplexMatrix a(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = rng.next_complex_gaussian();
  ComplexMatrix h = (a + a.dagger()) * 0.5;
  return h * (1.0 / op_norm(h));
}

CVec random_state(int dim, uint64_t seed) {
  if (dim < 1) throw DomainError("random_state: dim must be >= 1");
  Rng rng(seed, /*stream=*/0x53);
  CVec v(dim);
  for (cplx& x : v) x = rng.next_complex_gaussian();
  return vec_scale(v, 1.0 / vec_norm(v));
}

}  // namespace qkam
