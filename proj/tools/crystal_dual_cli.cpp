// Command-line front end; links the shared C API only.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "crystaldual.h"

namespace {

uint64_t default_seed() {
  const char* env = std::getenv("CRYSTAL_DUAL_SEED");
  if (!env || !*env) return 0;
  return std::strtoull(env, nullptr, 10);
}

int finish(cd_status st, char* out) {
  if (out) {
    std::fputs(out, stdout);
    cd_string_free(out);
  }
  if (st != CD_OK && !out) std::fprintf(stderr, "error: %s\n", cd_last_error());
  return int(st);
}

cd_group* open_group(const std::string& path, int* err) {
  cd_group* g = nullptr;
  cd_status st = cd_group_load(path.c_str(), &g);
  if (st != CD_OK) {
    std::fprintf(stderr, "error: %s\n", cd_last_error());
    *err = int(st);
    return nullptr;
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irreducible representations and dual-space limits of "
               "crystallographic groups"};
  app.set_version_flag("--version", cd_version());
  app.require_subcommand(1);

  std::string group_file, char_spec, preset_or_path, format = "json";
  uint64_t seed = default_seed();
  int branch = 1, samples = 12;
  bool with_unitary = false;

  auto* orbit = app.add_subcommand("orbit", "orbit and stabilizer of a character");
  orbit->add_option("group", group_file, "group datum file")->required();
  orbit->add_option("character", char_spec, "character, e.g. \"1/2,1/2,0\"")->required();
  orbit->add_option("--seed", seed, "PRNG seed");

  auto* irr = app.add_subcommand("irreps", "the complete dual over the orbit");
  irr->add_option("group", group_file)->required();
  irr->add_option("character", char_spec)->required();
  irr->add_option("--seed", seed, "PRNG seed");
  irr->add_option("--format", format, "json or pretty")
      ->check(CLI::IsMember({"json", "pretty"}));

  auto* lim = app.add_subcommand("limit", "limit decomposition along a path");
  lim->add_option("group", group_file)->required();
  auto* preset_opt =
      lim->add_option("--preset", preset_or_path, "preset name (bundled datum)");
  lim->add_option("--path", preset_or_path,
                  "path spec, e.g. \"1/3+1/6*t,1/2,0\" (alternative to --preset)")
      ->excludes(preset_opt);
  lim->add_option("--branch", branch, "1-based branch index at the base sample");
  lim->add_option("--samples", samples, "sample count of the schedule");
  lim->add_flag("--unitary", with_unitary, "include the block-diagonalizing unitary");
  lim->add_option("--seed", seed, "PRNG seed");

  auto* ver = app.add_subcommand("verify-group90", "regression suite for the bundled datum");
  ver->add_option("group", group_file)->required();
  ver->add_option("--seed", seed, "PRNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return int(CD_INPUT_ERROR);  // bad flags are input errors
  }

  if (ver->parsed()) {
    // verification owns datum validation: file faults fail criteria, not I/O
    char* out = nullptr;
    int all_pass = 0;
    cd_status st = cd_verify_group90_path(group_file.c_str(), seed, &out, &all_pass);
    return finish(st, out);
  }

  int err = 0;
  cd_group* g = open_group(group_file, &err);
  if (!g) return err;

  char* out = nullptr;
  cd_status st = CD_OK;
  if (orbit->parsed()) {
    st = cd_orbit_json(g, char_spec.c_str(), seed, &out);
  } else if (irr->parsed()) {
    st = format == "pretty" ? cd_irreps_pretty(g, char_spec.c_str(), seed, &out)
                            : cd_irreps_json(g, char_spec.c_str(), seed, &out);
  } else if (lim->parsed()) {
    if (preset_or_path.empty()) {
      std::fprintf(stderr, "error: limit needs --preset or --path\n");
      cd_group_free(g);
      return int(CD_INPUT_ERROR);
    }
    st = cd_limit_json(g, preset_or_path.c_str(), branch, seed, samples,
                       with_unitary ? 1 : 0, &out);
  }
  cd_group_free(g);
  return finish(st, out);
}
