// Crystallographic group model: finite point group acting on a lattice Z^r,
// a normalized rational section, element arithmetic, characters, orbits.

#ifndef CDUAL_CRYSTAL_HPP_
#define CDUAL_CRYSTAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "turn.hpp"

namespace cdual {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<std::vector<std::int64_t>>;  // r x r

struct PointGroup {
  int order = 0;
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult;  // mult[h][k] = index of h*k
  std::vector<int> inv;
  std::vector<IntMat> action;          // M_d, action on Z^r
  std::vector<IntMat> action_inv;      // M_d^{-1}, derived

  int index_of(const std::string& name) const;
  // exhaustive group-table and action-homomorphism checks
  void validate(int dim) const;
};

// element i(n) * gamma(d) of the extension, in normal form
struct GElement {
  IntVec n;
  int d = 0;
};

// chi in the dual of Z^r: chi(m) = prod exp(2*pi*i*u_j*m_j)
struct Character {
  std::vector<Turn> u;

  bool exact() const;
  Turn eval(const IntVec& m) const;      // chi(m)
  bool same(const Character& o, double tol = 1e-12) const;
  std::string str() const;
};

struct OrbitData {
  std::vector<Character> orbit;     // in canonical transversal order
  std::vector<int> stabilizer;      // ascending point indices
  std::vector<int> transversal;     // coset reps of D / stab, ascending
};

// a named generator of the group, as a concrete element
struct NamedGenerator {
  std::string name;
  GElement g;
};

struct CrystalGroup {
  int dim = 0;
  PointGroup point;
  std::vector<std::vector<Frac>> section;  // t_d, rational, t_e = 0
  // integer defect of the section in "left" form:
  //   nu_left(h,k) = t_h + M_h t_k - t_{hk}
  std::vector<std::vector<IntVec>> nu_left;
  std::vector<NamedGenerator> generators;
  std::vector<std::vector<std::pair<int, int>>> relator_words;  // (gen idx, power)
  std::vector<std::vector<std::pair<int, int>>> n_generator_words;
  bool is_builtin_g90 = false;
  std::string source_name = "group";

  // ---- element arithmetic ----
  GElement identity() const;
  GElement lattice(const IntVec& m) const;            // i(m)
  GElement sect(int d) const;                         // gamma(d)
  GElement mul(const GElement& x, const GElement& y) const;
  GElement inv(const GElement& x) const;
  bool equal(const GElement& x, const GElement& y) const;
  GElement eval_word(const std::vector<std::pair<int, int>>& word) const;

  // factor set of the fixed section: nu(h,k) = gamma(hk)^{-1} gamma(h) gamma(k)
  IntVec factor_set(int h, int k) const;

  // ---- dual action ----
  Character dual_action(int d, const Character& chi) const;
  OrbitData orbit_stabilizer(const Character& chi) const;

  // load-time validation; errors carry the offending row/word
  void validate() const;
};

// Parse the group datum text format. Errors are line-anchored.
CrystalGroup parse_group_datum(const std::string& text);
CrystalGroup load_group_datum_file(const std::string& path);

// The bundled dimension-3 group 90 datum.
const std::string& g90_datum_text();
CrystalGroup builtin_g90();

// Orbit-type labels for the bundled group-90 datum: "1-T1", "1-T2", "2-T1",
// "2-T2", "2-T3", "4-T1".."4-T5", "8". Errors on any other datum.
std::string classify_orbit_type_90(const CrystalGroup& g, const Character& chi);

// stabilizer point-subgroup expected for each group-90 orbit type
std::vector<int> g90_type_stabilizer(const std::string& label);

}  // namespace cdual

#endif
