#include <doctest.h>

#include <cstring>
#include <set>

#include "finiterep.hpp"

using namespace cdual;

namespace {

const CrystalGroup& g90() {
  static CrystalGroup g = builtin_g90();
  return g;
}

FiniteGroup cyclic(int n) {
  FiniteGroup g;
  g.order = n;
  g.mult.assign(n, std::vector<int>(n));
  g.inv.resize(n);
  g.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    g.labels[i] = std::to_string(i);
    g.inv[i] = (n - i) % n;
    for (int j = 0; j < n; ++j) g.mult[i][j] = (i + j) % n;
  }
  g.validate();
  return g;
}

FiniteGroup point_group_as_finite(const PointGroup& pg) {
  FiniteGroup g;
  g.order = pg.order;
  g.mult = pg.mult;
  g.inv = pg.inv;
  g.labels = pg.names;
  g.validate();
  return g;
}

Character chi_of(std::initializer_list<Turn> ts) {
  Character c;
  c.u = ts;
  return c;
}

}  // namespace

TEST_CASE("irreps of small groups") {
  auto z2 = cyclic(2);
  auto reps = irreps(z2, 0);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].dim == 1);
  CHECK(reps[1].dim == 1);
  bool found_trivial = false, found_sign = false;
  for (const auto& r : reps) {
    cplx v = r.mats[1](0, 0);
    if (std::abs(v - cplx(1)) < 1e-9) found_trivial = true;
    if (std::abs(v + cplx(1)) < 1e-9) found_sign = true;
  }
  CHECK(found_trivial);
  CHECK(found_sign);

  // dihedral of order 8: dims {1,1,1,1,2} forced by 5 classes and sum 8
  auto d4 = point_group_as_finite(g90().point);
  CHECK(d4.conjugacy_class_count() == 5);
  auto dreps = irreps(d4, 0);
  REQUIRE(dreps.size() == 5);
  std::multiset<int> dims;
  for (const auto& r : dreps) dims.insert(r.dim);
  CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
}

TEST_CASE("irreps are deterministic and orthogonal") {
  auto d4 = point_group_as_finite(g90().point);
  auto a = irreps(d4, 3), b = irreps(d4, 3);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (int gidx = 0; gidx < d4.order; ++gidx)
      CHECK(std::memcmp(a[i].mats[gidx].a.data(), b[i].mats[gidx].a.data(),
                        a[i].mats[gidx].a.size() * sizeof(cplx)) == 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) {
      cplx ip = 0.0;
      auto ci = a[i].character(), cj = a[j].character();
      for (int x = 0; x < d4.order; ++x) ip += ci[x] * std::conj(cj[x]);
      ip /= double(d4.order);
      CHECK(std::abs(ip - (i == j ? cplx(1) : cplx(0))) < 1e-8);
    }
  // a different seed gives the same canonical character ordering
  auto c = irreps(d4, 12345);
  REQUIRE(c.size() == a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    auto ca = a[i].character(), cc = c[i].character();
    for (int x = 0; x < d4.order; ++x) CHECK(std::abs(ca[x] - cc[x]) < 1e-7);
  }
}

TEST_CASE("extension of a trivial cocycle is the direct product") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()});
  OrbitData od = g.orbit_stabilizer(chi);  // {e, a3b}
  TwoCocycle w = omega_chi(g, chi, od.stabilizer);
  Finitized fz = finitize(equalize(w).omega_eq);
  Extension ext = build_extension(od.stabilizer, fz.omega_fin, fz.n);
  CHECK(ext.group.order == 4);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int i2 = 0; i2 < 2; ++i2) {
          int got = ext.group.mult[ext.index_of(j1, i1)][ext.index_of(j2, i2)];
          int want = ext.index_of((j1 + j2) % 2, (i1 + i2) % 2);
          CHECK(got == want);
        }
  auto reps = irreps(ext.group, 0);
  CHECK(reps.size() == 4);
  auto kept = filter_gstar(reps, ext);
  CHECK(kept.size() == 2);
  for (const auto& r : kept)
    CHECK(std::abs(r.mats[ext.central_generator()](0, 0) + cplx(1)) < 1e-9);
}

TEST_CASE("group-90 extensions reproduce the reference dimension data") {
  const CrystalGroup& g = g90();
  struct Case {
    Character chi;
    std::multiset<int> filtered_dims;
  };
  std::vector<Case> cases = {
      {chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()}), {1, 1, 1, 1, 2}},
      {chi_of({Turn(), Turn(), Turn::rational(1, 5)}), {1, 1, 1, 1}},
      {chi_of({Turn(), Turn::rational(1, 2), Turn()}), {2}},
      {chi_of({Turn::rational(1, 5), Turn(), Turn()}), {1, 1}},
  };
  for (const auto& c : cases) {
    OrbitData od = g.orbit_stabilizer(c.chi);
    TwoCocycle w = omega_chi(g, c.chi, od.stabilizer);
    Finitized fz = finitize(equalize(w).omega_eq);
    Extension ext = build_extension(od.stabilizer, fz.omega_fin, fz.n);
    CHECK(ext.group.order == fz.n * fz.n);
    auto kept = filter_gstar(irreps(ext.group, 0), ext);
    std::multiset<int> dims;
    int dimsq = 0;
    for (const auto& r : kept) {
      dims.insert(r.dim);
      dimsq += r.dim * r.dim;
    }
    CHECK(dims == c.filtered_dims);
    CHECK(dimsq == int(od.stabilizer.size()));
  }
}

TEST_CASE("order-64 extension: full solver sweep") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  OrbitData od = g.orbit_stabilizer(chi);
  TwoCocycle w = omega_chi(g, chi, od.stabilizer);
  Finitized fz = finitize(equalize(w).omega_eq);
  Extension ext = build_extension(od.stabilizer, fz.omega_fin, fz.n);
  REQUIRE(ext.group.order == 64);
  auto all = irreps(ext.group, 0);
  int dimsq = 0;
  for (const auto& r : all) dimsq += r.dim * r.dim;
  CHECK(dimsq == 64);
  CHECK(int(all.size()) == ext.group.conjugacy_class_count());
  auto kept = filter_gstar(all, ext);
  std::multiset<int> dims;
  for (const auto& r : kept) dims.insert(r.dim);
  CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
}

TEST_CASE("extract_projective recovers an omega-representation") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn(), Turn::rational(1, 2), Turn()});  // (1,-1,1)
  OrbitData od = g.orbit_stabilizer(chi);
  TwoCocycle w = omega_chi(g, chi, od.stabilizer);
  Finitized fz = finitize(equalize(w).omega_eq);
  Extension ext = build_extension(od.stabilizer, fz.omega_fin, fz.n);
  auto kept = filter_gstar(irreps(ext.group, 0), ext);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].dim == 2);
  ProjectiveRep phi = extract_projective(kept[0], ext, fz.omega_fin);
  CHECK(phi.dim == kept[0].dim);
  int i = 1, j = 2, k = 0;
  for (int p = 0; p < int(ext.H.size()); ++p)
    if (ext.H[p] == g.point.mult[ext.H[i]][ext.H[j]]) k = p;
  CMatrix rhs = phi.mats[i].mul(phi.mats[j]).scaled(fz.omega_fin.at_pos(i, j).unit());
  CHECK(max_abs_diff(phi.mats[k], rhs) < kTolEq);
}

TEST_CASE("build_extension rejects non-finitized cocycles") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 5), Turn::rational(1, 5), Turn()});
  OrbitData od = g.orbit_stabilizer(chi);  // {e, a3b}
  TwoCocycle w = omega_chi(g, chi, od.stabilizer);
  TwoCocycle bad = w;
  bad.table[3] = Turn::rational(1, 5);
  CHECK_THROWS_WITH_AS(build_extension(od.stabilizer, bad, 2),
                       doctest::Contains("not finitized"), std::runtime_error);
}
