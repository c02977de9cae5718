#include <doctest.h>

#include "cmatrix.hpp"
#include "cocycle.hpp"
#include "rng.hpp"

using namespace cdual;

namespace {

const CrystalGroup& g90() {
  static CrystalGroup g = builtin_g90();
  return g;
}

Character chi_of(std::initializer_list<Turn> ts) {
  Character c;
  c.u = ts;
  return c;
}

std::vector<int> full_D() { return {0, 1, 2, 3, 4, 5, 6, 7}; }

NormalizedFunction nf(const PointGroup& pg, const std::vector<int>& H,
                      const std::vector<Turn>& vals) {
  NormalizedFunction f;
  f.point = &pg;
  f.H = H;
  f.values = vals;
  return f;
}

}  // namespace

TEST_CASE("omega of the trivial character is trivial on D") {
  const CrystalGroup& g = g90();
  TwoCocycle w = omega_chi(g, chi_of({Turn(), Turn(), Turn()}), full_D());
  for (const auto& t : w.table) CHECK(t.is_one());
}

TEST_CASE("omega is rejected off the stabilizer") {
  const CrystalGroup& g = g90();
  // (i,i,1) has stabilizer {e, a3b}; the full group is not allowed
  Character chi = chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()});
  CHECK_THROWS_WITH_AS(omega_chi(g, chi, full_D()),
                       doctest::Contains("off stabilizer"), std::runtime_error);
  TwoCocycle ok = omega_chi(g, chi, {0, 7});
  ok.check_valid();
}

TEST_CASE("omega table for (-1,-1,1): value set and pipeline fixtures") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  TwoCocycle w = omega_chi(g, chi, full_D());
  // value set is {1, -1}: reflections pick up the sign, rotations stay clean
  for (const auto& t : w.table)
    CHECK((t.is_one() || same_turn(t, Turn::rational(1, 2))));
  bool saw_minus = false;
  for (const auto& t : w.table) saw_minus |= same_turn(t, Turn::rational(1, 2));
  CHECK(saw_minus);

  Equalized ez = equalize(w);
  for (int h : full_D()) CHECK(ez.omega_eq.at(h, g.point.inv[h]).is_one());
  // eq is i exactly at b and a2b (the elements with omega(h,h^{-1}) = -1)
  CHECK(same_turn(ez.eq.at(4), Turn::rational(1, 4)));
  CHECK(same_turn(ez.eq.at(6), Turn::rational(1, 4)));
  CHECK(same_turn(ez.eq.at(0), Turn()));
  CHECK(same_turn(ez.eq.at(1), Turn()));

  Finitized fz = finitize(ez.omega_eq);
  CHECK(fz.n == 8);
  for (const auto& t : fz.fin.values) CHECK(t.is_one());  // fin degenerates here
  for (const auto& t : fz.omega_fin.table) CHECK(t.is_nth_root(8));
  // regression fixture: the omega_fin values are fourth roots of unity
  for (const auto& t : fz.omega_fin.table) CHECK(t.is_nth_root(4));
}

TEST_CASE("coboundaries") {
  const CrystalGroup& g = g90();
  // rho == 1 gives tau == 1
  NormalizedFunction one = nf(g.point, full_D(), std::vector<Turn>(8, Turn()));
  TwoCocycle tau1 = coboundary(one);
  for (const auto& t : tau1.table) CHECK(t.is_one());

  // tau_{r1 r2} = tau_{r1} tau_{r2} on the Klein subgroup {e,a2,b,a2b}
  std::vector<int> H = {0, 2, 4, 6};
  Rng rng(3);
  auto random_nf = [&]() {
    std::vector<Turn> v(4);
    v[0] = Turn();
    for (int i = 1; i < 4; ++i) v[i] = Turn::rational(rng.next_int(12), 12);
    return nf(g.point, H, v);
  };
  for (int it = 0; it < 20; ++it) {
    NormalizedFunction r1 = random_nf(), r2 = random_nf();
    NormalizedFunction r12 = r1;
    for (int i = 0; i < 4; ++i) r12.values[i] = r1.values[i].mul(r2.values[i]);
    TwoCocycle lhs = coboundary(r12);
    TwoCocycle rhs = coboundary(r1).mul(coboundary(r2));
    for (size_t i = 0; i < lhs.table.size(); ++i)
      CHECK(same_turn(lhs.table[i], rhs.table[i]));
  }

  // rho on Z2 = {e, a2} with rho(s) = i: tau(s,s) = rho(e)/rho(s)^2 = -1
  NormalizedFunction rho = nf(g.point, {0, 2}, {Turn(), Turn::rational(1, 4)});
  TwoCocycle tau = coboundary(rho);
  CHECK(same_turn(tau.at(2, 2), Turn::rational(1, 2)));
  CHECK(tau.at(0, 2).is_one());
}

TEST_CASE("equalize forces the principal branch") {
  const CrystalGroup& g = g90();
  // any omega with omega(h, h^{-1}) = -1 gets eq(h) = i
  Character chi = chi_of({Turn(), Turn::rational(1, 2), Turn()});  // (1,-1,1)
  std::vector<int> H = {0, 2, 4, 6};
  TwoCocycle w = omega_chi(g, chi, H);
  CHECK(same_turn(w.at(4, 4), Turn::rational(1, 2)));
  Equalized ez = equalize(w);
  CHECK(same_turn(ez.eq.at(4), Turn::rational(1, 4)));
}

TEST_CASE("finitize on an all-involutive subgroup uses the trivial case") {
  const CrystalGroup& g = g90();
  // Klein group {e,a2,b,a2b}: every element is its own inverse
  Character chi = chi_of({Turn(), Turn::rational(1, 2), Turn()});
  TwoCocycle w = omega_chi(g, chi, {0, 2, 4, 6});
  Finitized fz = finitize(equalize(w).omega_eq);
  for (const auto& t : fz.fin.values) CHECK(t.is_one());
  CHECK(fz.n == 4);
}

TEST_CASE("finitize is idempotent on an already-finitized cocycle") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn::rational(1, 5)});
  TwoCocycle w = omega_chi(g, chi, {0, 1, 2, 3});
  Finitized fz = finitize(equalize(w).omega_eq);
  Finitized again = finitize(fz.omega_fin);
  for (const auto& t : again.fin.values) CHECK(t.is_one());
  for (size_t i = 0; i < fz.omega_fin.table.size(); ++i)
    CHECK(same_turn(again.omega_fin.table[i], fz.omega_fin.table[i]));
}

TEST_CASE("finitize requires exact input") {
  const CrystalGroup& g = g90();
  TwoCocycle w = omega_chi(g, chi_of({Turn(), Turn(), Turn()}), full_D());
  w.table[9] = Turn::real(0.0);
  CHECK_THROWS_WITH_AS(finitize(w), doctest::Contains("exact"), std::runtime_error);
}

TEST_CASE("cohomologous witness: basic cases") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  TwoCocycle w = omega_chi(g, chi, full_D());

  auto lam = cohomologous_witness(w, w);
  REQUIRE(lam.has_value());
  TwoCocycle tau = coboundary(*lam);
  for (const auto& t : tau.table) CHECK(t.is_one());

  // (w * tau_mu, w) has a witness with tau_lambda = tau_mu
  Rng rng(9);
  for (int it = 0; it < 10; ++it) {
    std::vector<Turn> v(8);
    v[0] = Turn();
    for (int i = 1; i < 8; ++i) v[i] = Turn::rational(rng.next_int(24), 24);
    NormalizedFunction mu = nf(g.point, full_D(), v);
    TwoCocycle shifted = w.mul(coboundary(mu));
    auto found = cohomologous_witness(shifted, w);
    REQUIRE(found.has_value());
    TwoCocycle check = coboundary(*found);
    TwoCocycle want = coboundary(mu);
    for (size_t i = 0; i < check.table.size(); ++i)
      CHECK(same_turn(check.table[i], want.table[i]));
  }
}

TEST_CASE("witness chain links omega ~ omega_eq ~ omega_fin") {
  const CrystalGroup& g = g90();
  for (auto chi : {chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()}),
                   chi_of({Turn(), Turn::rational(1, 2), Turn()}),
                   chi_of({Turn::rational(1, 5), Turn(), Turn()})}) {
    auto H = g.orbit_stabilizer(chi).stabilizer;
    TwoCocycle w = omega_chi(g, chi, H);
    Equalized ez = equalize(w);
    Finitized fz = finitize(ez.omega_eq);
    CHECK(cohomologous_witness(w, ez.omega_eq).has_value());
    CHECK(cohomologous_witness(ez.omega_eq, fz.omega_fin).has_value());
    CHECK(cohomologous_witness(w, fz.omega_fin).has_value());
  }
}

TEST_CASE("nontrivial Klein-group cocycle admits no witness against trivial") {
  const CrystalGroup& g = g90();
  // standard nontrivial class on {e, a2, b, a2b}, from the sign table of the
  // 2x2 projective realization x -> X, y -> Z, xy -> XZ
  std::vector<int> H = {0, 2, 4, 6};
  TwoCocycle w;
  w.point = &g.point;
  w.H = H;
  auto idx = [&](int h) {
    for (int i = 0; i < 4; ++i)
      if (H[i] == h) return i;
    FAIL("element outside H");
    return -1;
  };
  // omega(g,h) defined by P(g)P(h) = omega * P(gh)
  // with P(e)=I, P(a2)=X, P(b)=Z, P(a2b)=XZ
  CMatrix X(2, 2), Z(2, 2), I2 = CMatrix::identity(2);
  X(0, 1) = 1;
  X(1, 0) = 1;
  Z(0, 0) = 1;
  Z(1, 1) = -1;
  CMatrix XZ = X.mul(Z);
  std::vector<CMatrix> P = {I2, X, Z, XZ};
  std::vector<int> members = {0, 2, 4, 6};
  w.table.assign(16, Turn());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int prod = g.point.mult[members[i]][members[j]];
      CMatrix lhs = P[i].mul(P[j]);
      const CMatrix& rhs = P[idx(prod)];
      // lhs = omega * rhs with omega = +-1
      cplx ratio = 0.0;
      for (size_t k = 0; k < lhs.a.size(); ++k)
        if (std::abs(rhs.a[k]) > 0.5) ratio = lhs.a[k] / rhs.a[k];
      w.table[i * 4 + j] = std::abs(ratio - cplx(1.0)) < 1e-9
                               ? Turn()
                               : Turn::rational(1, 2);
    }
  w.check_valid();

  TwoCocycle trivial = w;
  for (auto& t : trivial.table) t = Turn();
  CHECK_FALSE(cohomologous_witness(w, trivial).has_value());

  // brute-force oracle: no lambda with values in Z_4 works either
  bool found = false;
  for (int c1 = 0; c1 < 4 && !found; ++c1)
    for (int c2 = 0; c2 < 4 && !found; ++c2)
      for (int c3 = 0; c3 < 4 && !found; ++c3) {
        NormalizedFunction lam = nf(g.point, H,
                                    {Turn(), Turn::rational(c1, 4),
                                     Turn::rational(c2, 4), Turn::rational(c3, 4)});
        TwoCocycle tau = coboundary(lam);
        bool all = true;
        for (size_t i = 0; i < tau.table.size(); ++i)
          all = all && same_turn(tau.table[i], w.table[i]);
        found = all;
      }
  CHECK_FALSE(found);
}

TEST_CASE("witness adjusters enumerate Hom(H, T)") {
  const CrystalGroup& g = g90();
  // Klein four-group: 4 characters
  auto adj = witness_adjusters(g.point, {0, 2, 4, 6});
  CHECK(adj.size() == 4);
  for (const auto& lam : adj) {
    TwoCocycle tau = coboundary(lam);
    for (const auto& t : tau.table) CHECK(t.is_one());
  }
  // cyclic of order 4 as the rotation subgroup
  CHECK(witness_adjusters(g.point, {0, 1, 2, 3}).size() == 4);
  // full dihedral group: abelianization is Klein
  CHECK(witness_adjusters(g.point, {0, 1, 2, 3, 4, 5, 6, 7}).size() == 4);
  // trivial subgroup
  CHECK(witness_adjusters(g.point, {0}).size() == 1);
}
