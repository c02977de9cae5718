// Acceptance suite: runs every verification criterion against the bundled
// group-90 datum and prints one pass/fail line per criterion.

#include <cstdio>

#include "verify.hpp"

int main() {
  using namespace cdual;
  CrystalGroup g = builtin_g90();
  VerifyReport rep;
  try {
    rep = verify_group90(g, 0);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fatal: %s\n", e.what());
    return 1;
  }
  for (const auto& c : rep.criteria)
    std::printf("%-4s %-28s %6.2fs  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.seconds, c.detail.c_str());
  std::printf("%s\n", rep.all_pass() ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return rep.all_pass() ? 0 : 1;
}
