// JSON and pretty rendering of orbit queries, dual enumerations, and limit
// decompositions. JSON is the authoritative machine format; pretty output
// renders entries exactly when they are recognizable turns.

#ifndef CDUAL_REPORT_HPP_
#define CDUAL_REPORT_HPP_

#include <string>

#include "charspec.hpp"

namespace cdual {

extern const char* kVersion;

std::string orbit_report_json(const CrystalGroup& g, const std::string& char_spec,
                              std::uint64_t seed);
std::string irreps_report_json(const CrystalGroup& g, const std::string& char_spec,
                               std::uint64_t seed);
std::string irreps_report_pretty(const CrystalGroup& g, const std::string& char_spec,
                                 std::uint64_t seed);
// preset_or_path: a preset name for the bundled datum, or a path spec
std::string limit_report_json(const CrystalGroup& g, const std::string& preset_or_path,
                              int branch_label, std::uint64_t seed, int samples,
                              bool with_unitary);

// render one complex entry exactly when it is a small-denominator turn
std::string pretty_entry(const cplx& v);

}  // namespace cdual

#endif
