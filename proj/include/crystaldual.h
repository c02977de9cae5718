/* C API for the crystallographic unitary-dual library.
 *
 * All functions return a cd_status; outputs are heap strings released with
 * cd_string_free. cd_last_error() describes the most recent failure on the
 * calling thread. Group handles are opaque and freed with cd_group_free.
 */

#ifndef CRYSTALDUAL_H_
#define CRYSTALDUAL_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cd_group cd_group;

typedef enum {
  CD_OK = 0,
  CD_VERIFY_FAIL = 1,   /* a verification criterion failed */
  CD_INPUT_ERROR = 2,   /* bad file, spec, or argument */
  CD_CONVERGENCE_ERROR = 3 /* a numerical stage failed to converge */
} cd_status;

const char* cd_version(void);

/* thread-local message for the last failing call */
const char* cd_last_error(void);

cd_status cd_group_load(const char* path, cd_group** out);
cd_status cd_group_parse(const char* datum_text, cd_group** out);
cd_status cd_group_builtin_g90(cd_group** out);
void cd_group_free(cd_group* group);

/* orbit, stabilizer, and (for the bundled datum) the orbit-type label */
cd_status cd_orbit_json(const cd_group* group, const char* character_spec,
                        uint64_t seed, char** json_out);

/* the complete dual over the orbit of the character */
cd_status cd_irreps_json(const cd_group* group, const char* character_spec,
                         uint64_t seed, char** json_out);
cd_status cd_irreps_pretty(const cd_group* group, const char* character_spec,
                           uint64_t seed, char** text_out);

/* limit decomposition along a preset name or a path spec; branch is the
 * 1-based reference branch index */
cd_status cd_limit_json(const cd_group* group, const char* preset_or_path,
                        int branch, uint64_t seed, int samples, int with_unitary,
                        char** json_out);

/* full regression suite for the bundled group-90 datum; *all_pass is 1 when
 * every criterion passed, and the status is CD_VERIFY_FAIL otherwise */
cd_status cd_verify_group90_json(const cd_group* group, uint64_t seed,
                                 char** json_out, int* all_pass);

/* like cd_verify_group90_json but loads the datum itself, so file problems
 * are reported as a failed first criterion rather than a load error */
cd_status cd_verify_group90_path(const char* path, uint64_t seed,
                                 char** json_out, int* all_pass);

void cd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CRYSTALDUAL_H_ */
