// Reference irreducible-representation tables for the bundled group-90
// datum, keyed by orbit type and instantiated at concrete characters. Used
// by the verifier to match computed representations row by row.

#ifndef CDUAL_G90_TABLES_HPP_
#define CDUAL_G90_TABLES_HPP_

#include <string>
#include <vector>

#include "mackey.hpp"

namespace cdual {

struct G90TableRow {
  std::string label;  // "pi1".."pi5"
  CMatrix a, b, c;    // generator images
};

// All table rows for the orbit type of chi, instantiated at chi. Throws on a
// non-group-90 datum. Square roots of parameters use the principal branch
// (argument in [0, pi)). With as_printed, the (-1,-1,-1) block keeps its
// repeated row exactly as recorded; otherwise the row is the corrected
// reading that completes the sign pattern.
std::vector<G90TableRow> g90_reference_rows(const CrystalGroup& g,
                                            const Character& chi,
                                            bool as_printed = true);

// Evaluator on group elements from generator images: every element factors
// as lattice-word times section-word over {a, b, c}.
GRep g90_row_as_grep(const CrystalGroup& g, const Character& chi,
                     const G90TableRow& row);

// Match computed induced reps against the reference rows; result[i] is the
// label of the unique matching row, or "" when nothing matches.
std::vector<std::string> match_against_reference(const CrystalGroup& g,
                                                 const DualResult& dual,
                                                 bool as_printed = false);

// The printed reference block for (-1,-1,-1) repeats one row verbatim; the
// verifier reports it as a table discrepancy instead of a failure.
bool g90_block_has_duplicate_row(const CrystalGroup& g, const Character& chi);

}  // namespace cdual

#endif
