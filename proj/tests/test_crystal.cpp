#include <doctest.h>

#include "crystal.hpp"
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

// affine oracle: elements as (translation, matrix) pairs over rationals
struct Affine {
  std::vector<Frac> t;
  IntMat m;
};

Affine affine_of(const CrystalGroup& g, const GElement& x) {
  Affine a;
  a.m = g.point.action[x.d];
  a.t.resize(g.dim);
  for (int j = 0; j < g.dim; ++j) a.t[j] = Frac(x.n[j]) + g.section[x.d][j];
  return a;
}

Affine affine_mul(const Affine& x, const Affine& y) {
  int r = int(x.t.size());
  Affine out;
  out.t.assign(r, Frac(0));
  out.m.assign(r, IntVec(r, 0));
  for (int i = 0; i < r; ++i) {
    out.t[i] = x.t[i];
    for (int j = 0; j < r; ++j) {
      out.t[i] = out.t[i] + Frac(x.m[i][j]) * y.t[j];
      for (int k = 0; k < r; ++k) out.m[i][j] += x.m[i][k] * y.m[k][j];
    }
  }
  return out;
}

GElement random_element(const CrystalGroup& g, Rng& rng) {
  GElement x;
  x.d = int(rng.next_int(g.point.order));
  x.n.resize(g.dim);
  for (int j = 0; j < g.dim; ++j) x.n[j] = rng.next_int(9) - 4;
  return x;
}

}  // namespace

TEST_CASE("bundled group-90 datum loads and validates") {
  const CrystalGroup& g = g90();
  CHECK(g.dim == 3);
  CHECK(g.point.order == 8);
  CHECK(g.is_builtin_g90);
  CHECK(g.generators.size() == 3);
  CHECK(g.relator_words.size() == 5);
}

TEST_CASE("group arithmetic") {
  const CrystalGroup& g = g90();
  Rng rng(17);
  for (int it = 0; it < 100; ++it) {
    GElement x = random_element(g, rng);
    CHECK(g.equal(g.mul(g.identity(), x), x));
    CHECK(g.equal(g.mul(x, g.identity()), x));
    CHECK(g.equal(g.mul(x, g.inv(x)), g.identity()));
    CHECK(g.equal(g.mul(g.inv(x), x), g.identity()));
  }
}

TEST_CASE("relator words evaluate to one common element (the identity)") {
  const CrystalGroup& g = g90();
  GElement first = g.eval_word(g.relator_words[0]);
  for (const auto& w : g.relator_words) CHECK(g.equal(g.eval_word(w), first));
  CHECK(g.equal(first, g.identity()));
}

TEST_CASE("multiplication matches the affine composition oracle") {
  const CrystalGroup& g = g90();
  Rng rng(23);
  for (int it = 0; it < 200; ++it) {
    GElement x = random_element(g, rng);
    GElement y = random_element(g, rng);
    Affine prod = affine_mul(affine_of(g, x), affine_of(g, y));
    Affine direct = affine_of(g, g.mul(x, y));
    CHECK(prod.m == direct.m);
    for (int j = 0; j < g.dim; ++j) CHECK(prod.t[j] == direct.t[j]);
  }
}

TEST_CASE("factor set values") {
  const CrystalGroup& g = g90();
  // symmorphic datum (all zero sections): factor set vanishes
  {
    std::string text = g90_datum_text();
    // blank out all sections
    for (const char* name : {"e", "a", "a2", "a3", "b", "ab", "a2b", "a3b"}) {
      std::string hdr = std::string("[section ") + name + "]";
      size_t pos = text.find(hdr);
      REQUIRE(pos != std::string::npos);
      size_t line = text.find('\n', pos) + 1;
      size_t end = text.find('\n', line);
      text.replace(line, end - line, "0 0 0");
    }
    // drop relators / n_generators, which no longer hold
    text = text.substr(0, text.find("[generators]"));
    CrystalGroup sym = parse_group_datum(text);
    for (int h = 0; h < 8; ++h)
      for (int k = 0; k < 8; ++k)
        for (auto v : sym.factor_set(h, k)) CHECK(v == 0);
  }
  // nu(b,b) = -e2 in the bundled datum; nu(a,a3) = 0
  int b = g.point.index_of("b"), a = g.point.index_of("a"), a3 = g.point.index_of("a3");
  CHECK(g.factor_set(b, b) == IntVec{0, -1, 0});
  CHECK(g.factor_set(a, a3) == IntVec{0, 0, 0});
  // normalization
  for (int h = 0; h < 8; ++h) {
    CHECK(g.factor_set(0, h) == IntVec{0, 0, 0});
    CHECK(g.factor_set(h, 0) == IntVec{0, 0, 0});
  }
}

TEST_CASE("dual action reproduces the chart rows") {
  const CrystalGroup& g = g90();
  Character u = chi_of({Turn::rational(1, 13), Turn::rational(2, 17), Turn::rational(3, 19)});
  Character e = g.dual_action(0, u);
  CHECK(e.same(u));
  Character ra = g.dual_action(g.point.index_of("a"), u);
  CHECK(same_turn(ra.u[0], u.u[1].conj()));
  CHECK(same_turn(ra.u[1], u.u[0]));
  CHECK(same_turn(ra.u[2], u.u[2]));
  Character r7 = g.dual_action(g.point.index_of("a3b"), u);
  CHECK(same_turn(r7.u[0], u.u[1]));
  CHECK(same_turn(r7.u[1], u.u[0]));
  CHECK(same_turn(r7.u[2], u.u[2].conj()));
}

TEST_CASE("dual action inverse identity holds exactly") {
  const CrystalGroup& g = g90();
  Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    Character chi = chi_of({Turn::rational(rng.next_int(24), 12),
                            Turn::rational(rng.next_int(24), 12),
                            Turn::rational(rng.next_int(24), 12)});
    for (int d = 0; d < 8; ++d) {
      Character back = g.dual_action(d, g.dual_action(g.point.inv[d], chi));
      CHECK(back.same(chi));
    }
  }
}

TEST_CASE("orbits and stabilizers of known characters") {
  const CrystalGroup& g = g90();
  {
    OrbitData od = g.orbit_stabilizer(chi_of({Turn(), Turn(), Turn()}));
    CHECK(od.orbit.size() == 1);
    CHECK(od.stabilizer.size() == 8);
  }
  {
    // (i, i, -1): 4-orbit with stabilizer {e, a3b}
    OrbitData od = g.orbit_stabilizer(
        chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn::rational(1, 2)}));
    CHECK(od.orbit.size() == 4);
    CHECK(od.stabilizer == std::vector<int>{0, 7});
  }
  {
    OrbitData od = g.orbit_stabilizer(
        chi_of({Turn::real(0.13), Turn::real(0.29), Turn::real(0.41)}));
    CHECK(od.orbit.size() == 8);
    CHECK(od.stabilizer == std::vector<int>{0});
  }
}

TEST_CASE("orbit sizes divide the point-group order") {
  const CrystalGroup& g = g90();
  Rng rng(31);
  for (int it = 0; it < 1000; ++it) {
    Character chi = chi_of({Turn::rational(rng.next_int(40), 1 + rng.next_int(20)),
                            Turn::rational(rng.next_int(40), 1 + rng.next_int(20)),
                            Turn::rational(rng.next_int(40), 1 + rng.next_int(20))});
    size_t n = g.orbit_stabilizer(chi).orbit.size();
    CHECK((n == 1 || n == 2 || n == 4 || n == 8));
  }
}

TEST_CASE("orbit-type classification") {
  const CrystalGroup& g = g90();
  CHECK(classify_orbit_type_90(g, chi_of({Turn(), Turn(), Turn::rational(1, 2)})) == "1-T1");
  CHECK(classify_orbit_type_90(
            g, chi_of({Turn::rational(1, 2), Turn::rational(1, 2), Turn::rational(1, 5)})) ==
        "2-T3");
  CHECK(classify_orbit_type_90(
            g, chi_of({Turn::rational(1, 5), Turn(), Turn::rational(1, 2)})) == "4-T3");
  CHECK(classify_orbit_type_90(
            g, chi_of({Turn::rational(1, 4), Turn::rational(1, 4), Turn()})) == "4-T1");
  CHECK(classify_orbit_type_90(
            g, chi_of({Turn::rational(1, 3), Turn::rational(1, 5), Turn::rational(1, 7)})) ==
        "8");
  // stabilizers agree with the reference table
  CHECK(g90_type_stabilizer("4-T3") == std::vector<int>{0, 6});
  // classification refuses other data
  std::string text = g90_datum_text();
  text = text.substr(0, text.find("[generators]"));
  CrystalGroup other = parse_group_datum(text);
  CHECK_THROWS(classify_orbit_type_90(other, chi_of({Turn(), Turn(), Turn()})));
}

TEST_CASE("shipped datum file matches the builtin text") {
  CrystalGroup g = load_group_datum_file(std::string(CDUAL_SOURCE_DIR) + "/data/g90.toml");
  CHECK(g.is_builtin_g90);
  CHECK(g.point.order == 8);
}

TEST_CASE("datum parse errors are line anchored") {
  CHECK_THROWS_WITH_AS(parse_group_datum("dim = 0\nelements = e\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  std::string text = g90_datum_text();
  // mutate one mult entry to break the table
  size_t pos = text.find("a a2 a3 e ab a2b a3b b");
  text.replace(pos, 1, "e");
  CHECK_THROWS_WITH_AS(parse_group_datum(text), doctest::Contains("identity"),
                       std::runtime_error);
}

TEST_CASE("duplicate element labels are rejected") {
  std::string text = g90_datum_text();
  size_t pos = text.find("elements = e a a2 a3 b ab a2b a3b");
  text.replace(pos, std::string("elements = e a a2 a3 b ab a2b a3b").size(),
               "elements = e a a2 a3 b ab a2b a2b");
  CHECK_THROWS_WITH_AS(parse_group_datum(text), doctest::Contains("duplicate"),
                       std::runtime_error);
}

TEST_CASE("mutated section breaks the relator chain at load") {
  std::string text = g90_datum_text();
  size_t pos = text.find("[section a]");
  size_t line = text.find('\n', pos) + 1;
  size_t end = text.find('\n', line);
  text.replace(line, end - line, "-1/2 -1/2 1");
  CHECK_THROWS_WITH_AS(parse_group_datum(text),
                       doctest::Contains("relator chain"), std::runtime_error);
}

TEST_CASE("section leaving the lattice is rejected") {
  std::string text = g90_datum_text();
  size_t pos = text.find("[section a2]");
  size_t line = text.find('\n', pos) + 1;
  size_t end = text.find('\n', line);
  text.replace(line, end - line, "0 -1 1/3");
  CHECK_THROWS_WITH_AS(parse_group_datum(text),
                       doctest::Contains("invalid vector system"), std::runtime_error);
}

TEST_CASE("mutated action matrix is rejected") {
  std::string text = g90_datum_text();
  size_t pos = text.find("[action a3b]");
  size_t line = text.find('\n', pos) + 1;
  size_t end = text.find('\n', line);
  text.replace(line, end - line, "0 -1 0");
  CHECK_THROWS_WITH_AS(parse_group_datum(text), doctest::Contains("homomorphism"),
                       std::runtime_error);
}
