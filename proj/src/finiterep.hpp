// Finite groups given by multiplication tables, the central extension of a
// point subgroup by a finitized cocycle, and a numerical solver for the
// complete list of irreducible unitary representations.

#ifndef CDUAL_FINITEREP_HPP_
#define CDUAL_FINITEREP_HPP_

#include <string>
#include <vector>

#include "cmatrix.hpp"
#include "cocycle.hpp"

namespace cdual {

struct FiniteGroup {
  int order = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mult;
  std::vector<int> inv;

  void validate() const;  // exhaustive group axioms
  int conjugacy_class_count() const;
};

struct FiniteRep {
  const FiniteGroup* group = nullptr;
  int dim = 0;
  std::vector<CMatrix> mats;  // one unitary per element

  void check_valid(double tol = kTolMat) const;
  std::vector<cplx> character() const;
};

// The central extension of H by Z_n along a finitized cocycle. Elements are
// pairs (j, h) with j in Z_n, indexed j * |H| + hpos.
struct Extension {
  FiniteGroup group;
  std::vector<int> H;  // point indices of the base subgroup
  int n = 0;           // central Z_n order

  int index_of(int j, int hpos) const { return j * int(H.size()) + hpos; }
  int central_generator() const { return index_of(1 % n, 0); }
};

// Requires omega_fin to take values in the n-th roots of unity, n = |H|.
Extension build_extension(const std::vector<int>& H, const TwoCocycle& omega_fin,
                          int n);

// Complete list of pairwise-inequivalent irreps, deterministic in (group,
// seed): splits the left regular representation by commutant averaging.
std::vector<FiniteRep> irreps(const FiniteGroup& g, std::uint64_t seed);

// Keep the irreps whose central Z_n acts by the matching scalar.
std::vector<FiniteRep> filter_gstar(const std::vector<FiniteRep>& reps,
                                    const Extension& ext);

// Phi(h) = Theta(1, h); checked to be an omega_fin projective representation.
struct ProjectiveRep {
  std::vector<int> H;
  int dim = 0;
  std::vector<CMatrix> mats;  // per H position
};
ProjectiveRep extract_projective(const FiniteRep& theta, const Extension& ext,
                                 const TwoCocycle& omega_fin);

}  // namespace cdual

#endif
