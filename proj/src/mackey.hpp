// The back half of the enumeration pipeline: lift extension irreps to
// ordinary stabilizer representations, induce along coset transversals,
// enumerate the dual over an orbit, and decide equivalence.

#ifndef CDUAL_MACKEY_HPP_
#define CDUAL_MACKEY_HPP_

#include <functional>
#include <memory>

#include "finiterep.hpp"

namespace cdual {

// chi*(x) = chi(gamma(q(x))^{-1} x): the canonical scalar extension of chi
// to its stabilizer. Errors when the point part leaves the stabilizer.
Turn chi_star(const CrystalGroup& g, const Character& chi, const GElement& x);

// ordinary irreducible representation of the stabilizer G_H restricting to
// chi-isotypic over the lattice, stored as scale * mat per point element
struct StabRep {
  const CrystalGroup* cg = nullptr;
  Character chi;
  std::vector<int> stab;          // ascending point indices H
  int dim = 0;
  std::vector<Turn> scale;        // per H position, multiplies mats
  std::vector<CMatrix> mats;      // per H position

  CMatrix eval(const GElement& x) const;  // x must lie over H
  bool in_domain(int point_index) const;
};

// lift an extension irrep through the bijection chain to an ordinary rep of
// the stabilizer; audits the homomorphism law and the lattice restriction
StabRep lift_to_stab(const CrystalGroup& g, const Character& chi,
                     const FiniteRep& theta, const Extension& ext,
                     const NormalizedFunction& eq, const NormalizedFunction& fin,
                     const TwoCocycle& omega_fin, std::uint64_t seed);

// block-matrix induction along the canonical transversal of K / H, where the
// ambient subgroup K defaults to the full point group
struct InducedRep {
  StabRep sigma;
  std::vector<int> ambient;       // K, ascending point indices
  std::vector<int> transversal;   // coset reps of K / H, ascending
  int dim = 0;

  CMatrix eval(const GElement& x) const;  // x must lie over K
};
InducedRep induce(const StabRep& sigma);
InducedRep induce_to(const StabRep& sigma, const std::vector<int>& ambient);

// a representation of G as an evaluator, with its base character
struct GRep {
  int dim = 0;
  Character base_chi;
  std::function<CMatrix(const GElement&)> eval;
};
GRep as_grep(const InducedRep& rep);

// restriction of a rep to the lattice generators; requires diagonal images
// in the canonical layout and returns the per-row character tuples
std::vector<Character> lattice_row_characters(const CrystalGroup& g, const GRep& rep);

// joint diagonalization of the commuting lattice images: a unitary basis in
// which every lattice generator image is diagonal, plus the row characters.
// The identity basis is returned when the images are already diagonal.
struct LatticeDiag {
  CMatrix basis;
  std::vector<Character> rows;
};
LatticeDiag lattice_diagonalize(const CrystalGroup& g, const GRep& rep);

// compress a rep of G to the chi-isotypic rows of its lattice restriction;
// result evaluates on elements of the stabilizer of chi
struct CompressedRep {
  int dim = 0;
  std::vector<int> rows;
  std::function<CMatrix(const GElement&)> eval;
};
CompressedRep compress_to_isotypic(const CrystalGroup& g, const GRep& rep,
                                   const Character& chi);

// projective character inner product over the canonical stabilizer
// transversal: (1/|D_chi|) sum_h Tr s1(gamma(h)) conj(Tr s2(gamma(h)))
cplx stab_inner_product(const CrystalGroup& g, const std::vector<int>& stab,
                        const std::function<CMatrix(const GElement&)>& s1,
                        const std::function<CMatrix(const GElement&)>& s2);

// Mackey criterion: same orbit, then aligned stabilizer-level characters
bool equivalent(const CrystalGroup& g, const GRep& p1, const GRep& p2);

struct DualResult {
  Character chi;
  OrbitData orbit;
  Equalized eqz;
  Finitized fin;
  std::vector<StabRep> stab_reps;    // canonical solver order
  std::vector<InducedRep> induced;
};

// The enumeration pipeline over the orbit of an exact character:
// stabilizer, obstruction cocycle, equalize/finitize, extension irreps,
// filter, lift, induce. Audits pairwise inequivalence and the dimension law.
DualResult dual_over_orbit(const CrystalGroup& g, const Character& chi,
                           std::uint64_t seed);

}  // namespace cdual

#endif
