// extern-C surface: opaque handles and status codes over the C++ core.

#include "crystaldual.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "report.hpp"
#include "verify.hpp"

using namespace cdual;

struct cd_group {
  CrystalGroup g;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cd_status fail_with(const std::exception& e, cd_status code) {
  t_last_error = e.what();
  return code;
}

// convergence failures carry these markers in their message
bool is_convergence_error(const std::string& msg) {
  return msg.find("converge") != std::string::npos ||
         msg.find("splitting failed") != std::string::npos;
}

template <typename Fn>
cd_status guarded(Fn&& fn) {
  try {
    fn();
    return CD_OK;
  } catch (const std::exception& e) {
    return fail_with(e, is_convergence_error(e.what()) ? CD_CONVERGENCE_ERROR
                                                       : CD_INPUT_ERROR);
  }
}

}  // namespace

extern "C" {

const char* cd_version(void) { return kVersion; }

const char* cd_last_error(void) { return t_last_error.c_str(); }

cd_status cd_group_load(const char* path, cd_group** out) {
  if (!path || !out) return CD_INPUT_ERROR;
  return guarded([&]() {
    auto* h = new cd_group{load_group_datum_file(path)};
    *out = h;
  });
}

cd_status cd_group_parse(const char* datum_text, cd_group** out) {
  if (!datum_text || !out) return CD_INPUT_ERROR;
  return guarded([&]() {
    auto* h = new cd_group{parse_group_datum(datum_text)};
    if (datum_text == g90_datum_text()) h->g.is_builtin_g90 = true;
    *out = h;
  });
}

cd_status cd_group_builtin_g90(cd_group** out) {
  if (!out) return CD_INPUT_ERROR;
  return guarded([&]() { *out = new cd_group{builtin_g90()}; });
}

void cd_group_free(cd_group* group) { delete group; }

cd_status cd_orbit_json(const cd_group* group, const char* character_spec,
                        uint64_t seed, char** json_out) {
  if (!group || !character_spec || !json_out) return CD_INPUT_ERROR;
  return guarded([&]() {
    *json_out = dup_string(orbit_report_json(group->g, character_spec, seed));
  });
}

cd_status cd_irreps_json(const cd_group* group, const char* character_spec,
                         uint64_t seed, char** json_out) {
  if (!group || !character_spec || !json_out) return CD_INPUT_ERROR;
  return guarded([&]() {
    *json_out = dup_string(irreps_report_json(group->g, character_spec, seed));
  });
}

cd_status cd_irreps_pretty(const cd_group* group, const char* character_spec,
                           uint64_t seed, char** text_out) {
  if (!group || !character_spec || !text_out) return CD_INPUT_ERROR;
  return guarded([&]() {
    *text_out = dup_string(irreps_report_pretty(group->g, character_spec, seed));
  });
}

cd_status cd_limit_json(const cd_group* group, const char* preset_or_path,
                        int branch, uint64_t seed, int samples, int with_unitary,
                        char** json_out) {
  if (!group || !preset_or_path || !json_out) return CD_INPUT_ERROR;
  return guarded([&]() {
    *json_out = dup_string(limit_report_json(group->g, preset_or_path, branch,
                                             seed, samples, with_unitary != 0));
  });
}

cd_status cd_verify_group90_json(const cd_group* group, uint64_t seed,
                                 char** json_out, int* all_pass) {
  if (!group || !json_out) return CD_INPUT_ERROR;
  try {
    VerifyReport rep = verify_group90(group->g, seed);
    *json_out = dup_string(verify_report_json(group->g, rep, seed));
    if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
    return rep.all_pass() ? CD_OK : CD_VERIFY_FAIL;
  } catch (const std::exception& e) {
    return fail_with(e, CD_INPUT_ERROR);
  }
}

cd_status cd_verify_group90_path(const char* path, uint64_t seed,
                                 char** json_out, int* all_pass) {
  if (!path || !json_out) return CD_INPUT_ERROR;
  try {
    std::ifstream in(path);
    if (!in) {
      t_last_error = std::string("cannot open group datum '") + path + "'";
      return CD_INPUT_ERROR;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    VerifyReport rep = verify_group90_text(ss.str(), seed);
    CrystalGroup meta_group;
    meta_group.source_name = path;
    *json_out = dup_string(verify_report_json(meta_group, rep, seed));
    if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
    return rep.all_pass() ? CD_OK : CD_VERIFY_FAIL;
  } catch (const std::exception& e) {
    return fail_with(e, CD_INPUT_ERROR);
  }
}

void cd_string_free(char* s) { delete[] s; }

}  // extern "C"
