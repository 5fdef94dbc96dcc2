// Copyright 2026 The mixcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// C interface to the mixcert simulation and verification library.
//
// All functions are thread-safe as long as each mx_config / mx_report handle
// is used from one thread at a time. Functions that can fail return an
// mx_status; on failure, mx_last_error() returns a thread-local message
// describing the problem. Strings returned through char** out-parameters are
// malloc-allocated and must be released with mx_buffer_free.

#ifndef MIXCERT_H
#define MIXCERT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mx_status {
    MX_OK = 0,
    MX_ERR_ARGUMENT = 1,    /* input outside an operation's domain */
    MX_ERR_NUMERICAL = 2,   /* iteration or value left its valid range */
    MX_ERR_CONSISTENCY = 3, /* data violated an internal invariant */
    MX_ERR_IO = 4,          /* file could not be read, parsed, or written */
    MX_ERR_UNKNOWN = 5
} mx_status;

/* Opaque experiment configuration (key/value view over all run settings). */
typedef struct mx_config mx_config;

/* Opaque finished experiment report. */
typedef struct mx_report mx_report;

/* Library name and version, e.g. "mixcert 0.1.0". Static storage. */
const char* mx_version(void);

/* Message of the calling thread's most recent failure; "" if none. The
 * pointer stays valid until the thread's next failing mixcert call. */
const char* mx_last_error(void);

/* Frees a buffer returned through a char** out-parameter. NULL is a no-op. */
void mx_buffer_free(char* buffer);

/* ------------------------------------------------------------------ config
 *
 * A fresh config carries the documented defaults. Keys and value syntax:
 *
 *   d_grid       comma-separated dimensions, e.g. "8,16"
 *   eps          trace-distance parameter in (0, 1]
 *   n            sample-count override; -1 means "use the derived count"
 *   trials       repetitions per grid point
 *   seed         unsigned 64-bit root seed
 *   mc_outer     outer Monte-Carlo budget (histories)
 *   mc_pairs     rotation-pair Monte-Carlo budget
 *   mc_inner     inner Monte-Carlo budget (rotations per history)
 *   schedule     fixed | fresh-haar | greedy-realign
 *   state        mixed | hard | pure | file:<path>
 *   out          output path ("" renders to the caller)
 *   format       csv | json | svg
 *   jobs         worker threads (>= 1)
 *   multipliers  comma-separated sample multipliers, e.g. "0,6,12"
 *   t_max        deepest exact-table transcript length
 */

/* New config with default settings. Returns NULL only on allocation failure. */
mx_config* mx_config_new(void);

/* Loads a JSON config file (same keys as above). *out is NULL on failure. */
mx_status mx_config_load_file(const char* path, mx_config** out);

/* Sets one key from its string form. Unknown keys or unparseable values
 * leave the config unchanged and return MX_ERR_ARGUMENT. */
mx_status mx_config_set(mx_config* config, const char* key, const char* value);

/* JSON rendering of the full config. */
mx_status mx_config_render(const mx_config* config, char** out);

void mx_config_free(mx_config* config);

/* --------------------------------------------------------------------- run
 *
 * Commands: certify, sweep, paninski, verify, tails, simulate.
 */

/* Runs a command against a config. *out is NULL on failure. A report with
 * failed checks (see below) still returns MX_OK; failure here means the run
 * itself could not be completed. */
mx_status mx_run(const char* command, const mx_config* config, mx_report** out);

/* Verification checks that failed (empty for non-verify commands). */
size_t mx_report_num_failed_checks(const mx_report* report);

/* Name of the index-th failed check, or NULL if out of range. The pointer
 * stays valid until mx_report_free. */
const char* mx_report_failed_check(const mx_report* report, size_t index);

/* Renders the report as "csv", "json", or "svg". */
mx_status mx_report_render(const mx_report* report, const char* format, char** out);

/* Renders and writes the report to a file. */
mx_status mx_report_write_file(const mx_report* report, const char* path,
                               const char* format);

void mx_report_free(mx_report* report);

/* --------------------------------------------------------------- one-shots */

/* One mixedness certification of the named state family in dimension d at
 * trace distance eps, using the derived sample count (or n if n > 0).
 * Writes 1 to *verdict_is_yes when the state is accepted as maximally
 * mixed, 0 when rejected. samples_out and threshold_out are optional. */
mx_status mx_test_mixed(int d, double eps, const char* state, int64_t n, uint64_t seed,
                        int* verdict_is_yes, int64_t* samples_out, double* threshold_out);

/* Collision uniformity test over outcomes in [0, d). Writes 1 to
 * *verdict_is_uniform when the collision statistic stays at or below the
 * threshold for L2 radius eps_prime / sqrt(d). s_out and threshold_out are
 * optional. */
mx_status mx_collision_test(const int* samples, size_t num_samples, int d,
                            double eps_prime, int* verdict_is_uniform, int64_t* s_out,
                            double* threshold_out);

#ifdef __cplusplus
}
#endif

#endif
