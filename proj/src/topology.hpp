// Convergence analysis: character paths with a fixed sample schedule,
// generic sequences of stabilizer-level irreducibles, entrywise limits at
// orbit-drop points, and decomposition of limits with multiplicities.

#ifndef CDUAL_TOPOLOGY_HPP_
#define CDUAL_TOPOLOGY_HPP_

#include "g90_tables.hpp"
#include "mackey.hpp"

namespace cdual {

// one coordinate of a path: turn value c0 + c1 * t, exact rationals
struct CoordPath {
  Frac c0;
  Frac c1;  // zero for a constant coordinate
};

struct CharacterPath {
  const CrystalGroup* cg = nullptr;
  std::vector<CoordPath> coords;
  int samples = 12;  // schedule t_k = 1 - 2^{-k}, k = 1..samples

  Character at(const Frac& t) const;
  Character target() const { return at(Frac(1)); }
  Frac schedule(int k) const;  // t_k
};

// true iff |orbit(chi)| < k and some perturbation inside the eps-ball has
// orbit size exactly k. With a curve, perturbations sample curve(1 - delta).
bool detect_orbit_drop(const CrystalGroup& g, const Character& chi, int k,
                       double eps, int samples, std::uint64_t seed,
                       const CharacterPath* curve = nullptr);

struct GenericSequence {
  std::vector<int> shared_stab;        // D_* of the samples
  DualResult base;                     // full pipeline at the first sample
  int branch = 0;                      // index into base.stab_reps
  std::vector<NormalizedFunction> witnesses;  // lambda_k per sample
  NormalizedFunction witness_limit;
  StabRep limit;                       // over G_* restricting to the target
  double witness_cauchy_tail;          // max entrywise step over last 4 samples
  double term_vs_limit_gap;            // last sample vs limit, on gamma(D_*)
};

// the canonical convergent family chi_k* . Phi . lambda_k along the path,
// for the branch-th stabilizer representation at the base sample
GenericSequence generic_sequence(const CharacterPath& path, int branch,
                                 std::uint64_t seed);

struct EntrywiseLimit {
  GenericSequence seq;
  InducedRep rep;        // ind_{G_*}^G of the limit; evaluates on all of G
  double cauchy_gap;     // max over generators of |pi_K(g) - L(g)|
  double relator_defect; // max over relator words of |L(word) - L(common)|
};
EntrywiseLimit entrywise_limit(const CharacterPath& path, int branch,
                               std::uint64_t seed);

// projective character inner product of two chi-isotypic stabilizer-level
// representations, with restriction and transversal-independence audits
double inner_product(const CrystalGroup& g, const Character& chi,
                     const std::vector<int>& stab,
                     const std::function<CMatrix(const GElement&)>& sigma, int dim_sigma,
                     const std::function<CMatrix(const GElement&)>& rho, int dim_rho,
                     std::uint64_t seed);

struct DecompositionComponent {
  std::string label;   // reference label when available, else "rho<j>"
  int dim = 0;         // stabilizer-level dim of rho_j
  int induced_dim = 0;
  int multiplicity = 0;
};

struct DecompositionReport {
  Character target;
  int limit_stab_dim = 0;   // dim of ind_{G_*}^{G_chi} sigma_limit
  int limit_dim = 0;        // dim of the G-level entrywise limit
  std::vector<DecompositionComponent> components;
  double residual = 0.0;    // worst |m_j - round(m_j)|
  double leakage = -1.0;    // off-block max after conjugation, -1 if no U
  CMatrix block_unitary;    // optional witness U
  std::vector<std::string> block_labels;
};

// The full strategy for one path and branch: multiplicities of the target
// irreducibles in the limit, optional block-diagonalizing unitary.
DecompositionReport decompose_limit(const CharacterPath& path, int branch,
                                    std::uint64_t seed, bool with_unitary);

// read characters off concrete matrices: entry (1,1) of the images of the
// lattice generators, reconstructed as exact turns
Character recover_character(const CrystalGroup& g,
                            const std::vector<CMatrix>& lattice_gen_images);

// named path presets for the bundled group-90 datum
struct Preset {
  std::string name;
  std::vector<CoordPath> coords;
  int branch_count;
};
const std::vector<Preset>& g90_presets();
CharacterPath preset_path(const CrystalGroup& g, const std::string& name,
                          int samples = 12);

// map a 1-based reference branch label (pi<j> at the base sample) to the
// internal branch index of the base pipeline
int resolve_branch_label(const CharacterPath& path, int pi_index,
                         std::uint64_t seed);

}  // namespace cdual

#endif
