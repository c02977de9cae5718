#include <doctest.h>

#include <atomic>
#include <set>
#include <thread>

#include "g90_tables.hpp"
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

GElement random_stab_element(const CrystalGroup& g, const std::vector<int>& stab,
                             Rng& rng) {
  IntVec m(g.dim);
  for (int j = 0; j < g.dim; ++j) m[j] = rng.next_int(7) - 3;
  return g.mul(g.lattice(m), g.sect(stab[size_t(rng.next_int(int(stab.size())))]));
}

}  // namespace

TEST_CASE("chi_star") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  // (n, e) evaluates to chi(n)
  CHECK(same_turn(chi_star(g, chi, g.lattice({1, 0, 0})), Turn::rational(1, 2)));
  CHECK(same_turn(chi_star(g, chi, g.lattice({1, 1, 5})), Turn()));
  // (0, d) evaluates to 1 on the stabilizer
  for (int d = 0; d < 8; ++d) CHECK(chi_star(g, chi, g.sect(d)).is_one());
  // projective law chi*(xy) = conj(omega)(x,y) chi*(x) chi*(y) on 500 pairs
  TwoCocycle w = omega_chi(g, chi, {0, 1, 2, 3, 4, 5, 6, 7});
  Rng rng(19);
  for (int it = 0; it < 500; ++it) {
    GElement x = random_stab_element(g, w.H, rng);
    GElement y = random_stab_element(g, w.H, rng);
    cplx lhs = chi_star(g, chi, g.mul(x, y)).unit();
    cplx rhs = w.at(x.d, y.d).conj().unit() * chi_star(g, chi, x).unit() *
               chi_star(g, chi, y).unit();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // outside the stabilizer the extension is undefined
  Character small = chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()});
  CHECK_THROWS(chi_star(g, small, g.sect(1)));
}

TEST_CASE("lift for (-1,-1,1): dimensions and generator values") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  DualResult dual = dual_over_orbit(g, chi, 0);
  REQUIRE(dual.stab_reps.size() == 5);
  std::multiset<int> dims;
  for (const auto& s : dual.stab_reps) dims.insert(s.dim);
  CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
  // the four 1-dim lifts send the generator a to +-i, two of each
  int plus = 0, minus = 0;
  GElement a = g.sect(1);
  for (const auto& s : dual.stab_reps) {
    if (s.dim != 1) continue;
    cplx v = s.eval(a)(0, 0);
    if (std::abs(v - cplx(0, 1)) < 1e-9) ++plus;
    if (std::abs(v + cplx(0, 1)) < 1e-9) ++minus;
  }
  CHECK(plus == 2);
  CHECK(minus == 2);
  // homomorphism audit on 1000 random products
  Rng rng(7);
  for (const auto& s : dual.stab_reps) {
    for (int it = 0; it < 200; ++it) {
      GElement x = random_stab_element(g, s.stab, rng);
      GElement y = random_stab_element(g, s.stab, rng);
      CHECK(max_abs_diff(s.eval(g.mul(x, y)), s.eval(x).mul(s.eval(y))) < 1e-9);
    }
  }
}

TEST_CASE("induction: single-coset case is the identity on reps") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn(), Turn(), Turn()});
  DualResult dual = dual_over_orbit(g, chi, 0);
  for (size_t i = 0; i < dual.stab_reps.size(); ++i) {
    CHECK(dual.induced[i].dim == dual.stab_reps[i].dim);
    GElement x = g.mul(g.lattice({1, -2, 3}), g.sect(5));
    CHECK(max_abs_diff(dual.induced[i].eval(x), dual.stab_reps[i].eval(x)) < 1e-12);
  }
}

TEST_CASE("induced representations are unitary and multiplicative") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)});
  DualResult dual = dual_over_orbit(g, chi, 0);
  REQUIRE(dual.induced.size() == 1);
  const InducedRep& rep = dual.induced[0];
  CHECK(rep.dim == 8);
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    GElement x{{rng.next_int(7) - 3, rng.next_int(7) - 3, rng.next_int(7) - 3},
               int(rng.next_int(8))};
    GElement y{{rng.next_int(7) - 3, rng.next_int(7) - 3, rng.next_int(7) - 3},
               int(rng.next_int(8))};
    CMatrix mx = rep.eval(x);
    CHECK(mx.is_unitary(1e-9));
    CHECK(max_abs_diff(rep.eval(g.mul(x, y)), mx.mul(rep.eval(y))) < 1e-9);
  }
}

TEST_CASE("dual enumeration matches the reference counts") {
  const CrystalGroup& g = g90();
  struct Case {
    Character chi;
    std::multiset<int> dims;
  };
  std::vector<Case> cases = {
      {chi_of({Turn(), Turn(), Turn()}), {1, 1, 1, 1, 2}},
      {chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()}), {4, 4}},
      {chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)}), {8}},
      {chi_of({Turn(), Turn::rational(1, 2), Turn()}), {4}},
  };
  for (const auto& c : cases) {
    DualResult dual = dual_over_orbit(g, c.chi, 0);
    std::multiset<int> dims;
    int dimsq = 0;
    for (const auto& p : dual.induced) {
      dims.insert(p.dim);
      dimsq += p.dim * p.dim;
    }
    CHECK(dims == c.dims);
    CHECK(dimsq == int(dual.orbit.orbit.size()) * 8);
  }
}

TEST_CASE("equivalence decisions") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn(), Turn(), Turn()});
  DualResult dual = dual_over_orbit(g, chi, 0);
  GRep p0 = as_grep(dual.induced[0]);
  GRep p1 = as_grep(dual.induced[1]);
  CHECK(equivalent(g, p0, p0));
  CHECK_FALSE(equivalent(g, p0, p1));

  // conjugation by a fixed unitary preserves the class
  Character chi8 = chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)});
  DualResult d8 = dual_over_orbit(g, chi8, 0);
  GRep p = as_grep(d8.induced[0]);
  Rng rng(23);
  CMatrix x(p.dim, p.dim);
  for (int i = 0; i < p.dim; ++i) {
    x(i, i) = rng.next_normal();
    for (int j = i + 1; j < p.dim; ++j) {
      cplx v(rng.next_normal(), rng.next_normal());
      x(i, j) = v;
      x(j, i) = std::conj(v);
    }
  }
  CMatrix u = hermitian_eig(x).vectors;  // a concrete unitary
  GRep pc;
  pc.dim = p.dim;
  pc.base_chi = p.base_chi;
  auto ev = p.eval;
  pc.eval = [ev, u](const GElement& xx) {
    return u.adjoint().mul(ev(xx)).mul(u);
  };
  CHECK(equivalent(g, p, pc));
  CHECK(equivalent(g, pc, p));
}

TEST_CASE("computed duals match the reference tables row by row") {
  const CrystalGroup& g = g90();
  for (auto chi : {chi_of({Turn(), Turn(), Turn()}),
                   chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()}),
                   chi_of({Turn(), Turn::rational(1, 2), Turn()}),
                   chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn::rational(1, 2)}),
                   chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)})}) {
    DualResult dual = dual_over_orbit(g, chi, 0);
    auto labels = match_against_reference(g, dual);
    std::set<std::string> seen;
    for (const auto& l : labels) {
      CHECK(!l.empty());
      CHECK(seen.insert(l).second);
    }
  }
}

TEST_CASE("restriction to the lattice is the orbit-character diagonal") {
  const CrystalGroup& g = g90();
  Character chi = chi_of({Turn::rational(1, 4), Turn::rational(3, 4), Turn()});  // 4-T2
  DualResult dual = dual_over_orbit(g, chi, 0);
  for (const auto& rep : dual.induced) {
    for (int j = 0; j < 3; ++j) {
      IntVec m(3, 0);
      m[j] = 1;
      CMatrix img = rep.eval(g.lattice(m));
      CHECK(img.is_diagonal(1e-10));
      for (size_t t = 0; t < rep.transversal.size(); ++t) {
        Character c = g.dual_action(rep.transversal[t], chi);
        for (int i = 0; i < rep.sigma.dim; ++i) {
          int row = int(t) * rep.sigma.dim + i;
          CHECK(std::abs(img(row, row) - c.u[j].unit()) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("pipeline runs concurrently on independent characters") {
  const CrystalGroup& g = g90();
  std::vector<Character> chis = {
      chi_of({Turn(), Turn(), Turn()}),
      chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn::rational(1, 5)}),
      chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()}),
      chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)}),
  };
  std::vector<std::multiset<int>> dims(chis.size());
  std::atomic<int> failures{0};
  std::vector<std::thread> workers;
  for (size_t t = 0; t < chis.size(); ++t)
    workers.emplace_back([&, t]() {
      try {
        DualResult d = dual_over_orbit(g, chis[t], 0);
        for (const auto& p : d.induced) dims[t].insert(p.dim);
      } catch (...) {
        ++failures;
      }
    });
  for (auto& w : workers) w.join();
  CHECK(failures == 0);
  CHECK(dims[0] == std::multiset<int>{1, 1, 1, 1, 2});
  CHECK(dims[1] == std::multiset<int>{2, 2, 2, 2});
  CHECK(dims[2] == std::multiset<int>{4, 4});
  CHECK(dims[3] == std::multiset<int>{8});
}

TEST_CASE("dual enumeration works on a non-bundled (symmorphic) datum") {
  // zero out every section translation: the factor set vanishes and every
  // obstruction is trivial
  std::string text = g90_datum_text();
  for (const char* name : {"e", "a", "a2", "a3", "b", "ab", "a2b", "a3b"}) {
    std::string hdr = std::string("[section ") + name + "]";
    size_t pos = text.find(hdr);
    REQUIRE(pos != std::string::npos);
    size_t line = text.find('\n', pos) + 1;
    size_t end = text.find('\n', line);
    text.replace(line, end - line, "0 0 0");
  }
  text = text.substr(0, text.find("[generators]"));
  CrystalGroup sym = parse_group_datum(text);
  CHECK_FALSE(sym.is_builtin_g90);
  Character chi = chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn()});
  DualResult dual = dual_over_orbit(sym, chi, 0);
  std::multiset<int> dims;
  for (const auto& p : dual.induced) dims.insert(p.dim);
  CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
  // with a vanishing factor set the stabilizer reps are ordinary point-group
  // irreps twisted by chi; the lattice restriction is still chi-isotypic
  for (const auto& s : dual.stab_reps) {
    CMatrix img = s.eval(sym.lattice({1, 0, 0}));
    CHECK(max_abs_diff(img, CMatrix::identity(s.dim).scaled(-1.0)) < 1e-9);
  }
}
