// Turn-valued 2-cocycles on point subgroups, coboundaries, the obstruction
// cocycle of a character, equalization/finitization, cohomologous witnesses.

#ifndef CDUAL_COCYCLE_HPP_
#define CDUAL_COCYCLE_HPP_

#include <optional>
#include <vector>

#include "crystal.hpp"
#include "turn.hpp"

namespace cdual {

// dense table over an explicit subgroup H of the point group
struct TwoCocycle {
  const PointGroup* point = nullptr;
  std::vector<int> H;       // ascending point indices, closed under mult/inv
  std::vector<Turn> table;  // |H| x |H|, row-major in H positions

  int hsize() const { return int(H.size()); }
  int pos_of(int point_index) const;
  const Turn& at(int h, int k) const {  // by point indices
    return table[size_t(pos_of(h)) * H.size() + pos_of(k)];
  }
  Turn& at_pos(int i, int j) { return table[size_t(i) * H.size() + j]; }
  const Turn& at_pos(int i, int j) const { return table[size_t(i) * H.size() + j]; }

  bool exact() const;
  // cocycle law + normalization; exact tables are checked exactly
  void check_valid(double tol = 1e-10) const;
  bool is_equalized() const;

  TwoCocycle mul(const TwoCocycle& o) const;
  TwoCocycle inverse() const;
  TwoCocycle restricted(const std::vector<int>& sub) const;
};

struct NormalizedFunction {
  const PointGroup* point = nullptr;
  std::vector<int> H;
  std::vector<Turn> values;  // per H position; values[pos(e)] = 1

  const Turn& at(int point_index) const;
  bool exact() const;
};

// verify H is a subgroup of the point group (contains e, closed, inverses)
void check_subgroup(const PointGroup& pg, const std::vector<int>& H);

// the obstruction cocycle of chi on H: (h,k) -> conj(chi)(nu(h,k)).
// Requires H inside the stabilizer of chi.
TwoCocycle omega_chi(const CrystalGroup& g, const Character& chi,
                     const std::vector<int>& H);

// tau_rho(x,y) = rho(xy) [rho(x) rho(y)]^{-1}
TwoCocycle coboundary(const NormalizedFunction& rho);

struct Equalized {
  NormalizedFunction eq;
  TwoCocycle omega_eq;  // omega * tau_eq, satisfies omega_eq(h, h^{-1}) = 1
};
Equalized equalize(const TwoCocycle& omega);

struct Finitized {
  NormalizedFunction fin;
  TwoCocycle omega_fin;  // equalized and Z_n-valued
  int n;                 // n = |H|
};
// Input must be an equalized cocycle with exact values.
Finitized finitize(const TwoCocycle& omega_eq);

// A normalized lambda with tau_lambda = w1 * conj(w2), or nullopt if the two
// cocycles are not cohomologous. Exact inputs only; the canonical solution is
// deterministic in the inputs.
std::optional<NormalizedFunction> cohomologous_witness(const TwoCocycle& w1,
                                                       const TwoCocycle& w2);

// All witnesses differ by elements of Hom(H, Q/Z); enumerate that finite
// group (as normalized functions with tau = 1).
std::vector<NormalizedFunction> witness_adjusters(const PointGroup& pg,
                                                  const std::vector<int>& H);

}  // namespace cdual

#endif
