// Parsing of character tuples and character paths from the command-line
// grammar: per coordinate `p/q`, the shorthands 1, -1, i, -i, a decimal, or
// an affine form `c0+c1*t` (exact rationals only in path coordinates).

#ifndef CDUAL_CHARSPEC_HPP_
#define CDUAL_CHARSPEC_HPP_

#include "topology.hpp"

namespace cdual {

Character parse_character(const CrystalGroup& g, const std::string& spec);
CharacterPath parse_path(const CrystalGroup& g, const std::string& spec,
                         int samples = 12);

}  // namespace cdual

#endif
