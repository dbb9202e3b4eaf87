#ifndef L2H_L2H_H
#define L2H_L2H_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define L2H_API __declspec(dllexport)
#else
#define L2H_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l2h_status {
  L2H_OK = 0,
  L2H_ERR_SYNTAX = 1,
  L2H_ERR_UNKNOWN_GENERATOR = 2,
  L2H_ERR_DUPLICATE_GENERATOR = 3,
  L2H_ERR_NON_CONFLUENT_REWRITING = 4,
  L2H_ERR_RELATOR_NOT_TRIVIAL = 5,
  L2H_ERR_DIMENSION_MISMATCH = 6,
  L2H_ERR_SUPPORT_CAP_EXCEEDED = 7,
  L2H_ERR_BALL_TOO_LARGE = 8,
  L2H_ERR_DEGREE_OUT_OF_RANGE = 9,
  L2H_ERR_NOT_A_CYCLE = 10,
  L2H_ERR_PROFILE_NOT_APPLICABLE = 11,
  L2H_ERR_RELATOR_VIOLATION = 12,
  L2H_ERR_UNSUPPORTED_RESOLUTION = 13,
  L2H_ERR_HYPOTHESIS_NOT_SATISFIED = 14,
  L2H_ERR_NO_CANDIDATE_SUBSET = 15,
  L2H_ERR_INVALID_ARGUMENT = 16,
  L2H_ERR_UNSUPPORTED_GROUP = 17,
  L2H_ERR_IO = 18,
  L2H_ERR_NULL_HANDLE = 50,
  L2H_ERR_INTERNAL = 99
} l2h_status;

/* Run configuration and run report; both opaque. */
typedef struct l2h_config l2h_config;
typedef struct l2h_report l2h_report;

L2H_API const char* l2h_version(void);
L2H_API const char* l2h_status_name(l2h_status status);
/* Message of the last failing call on this thread, "" if none. */
L2H_API const char* l2h_last_error(void);

L2H_API l2h_status l2h_config_new(l2h_config** out);
L2H_API void l2h_config_free(l2h_config* config);

/* command: parse, complex, certify, betti, hopf or construct */
L2H_API l2h_status l2h_config_set_command(l2h_config* config, const char* command);
L2H_API l2h_status l2h_config_set_input_path(l2h_config* config, const char* path);
L2H_API l2h_status l2h_config_set_input_text(l2h_config* config, const char* text);
/* "a..b" or "a" */
L2H_API l2h_status l2h_config_set_degrees(l2h_config* config, const char* range);
L2H_API l2h_status l2h_config_set_max_power(l2h_config* config, unsigned max_power);
L2H_API l2h_status l2h_config_set_max_radius(l2h_config* config, size_t radius);
L2H_API l2h_status l2h_config_set_quotients(l2h_config* config, size_t count);
/* auto, l1, rd or subadditive */
L2H_API l2h_status l2h_config_set_method(l2h_config* config, const char* method);
L2H_API l2h_status l2h_config_set_seed(l2h_config* config, uint64_t seed);
/* exact rational such as "1/100" */
L2H_API l2h_status l2h_config_set_epsilon_zero(l2h_config* config, const char* value);
L2H_API l2h_status l2h_config_set_support_cap(l2h_config* config, size_t cap);
L2H_API l2h_status l2h_config_set_wedge_count(l2h_config* config, size_t count);
L2H_API l2h_status l2h_config_set_require_certified(l2h_config* config, int flag);
L2H_API l2h_status l2h_config_set_timing(l2h_config* config, int flag);
L2H_API l2h_status l2h_config_set_force(l2h_config* config, int flag);

/* Runs the configured command. Failures of the command itself (parse
   errors, violated hypotheses, resource caps) still produce a report and
   L2H_OK; the report's exit code tells them apart. */
L2H_API l2h_status l2h_run(const l2h_config* config, l2h_report** out);
L2H_API int l2h_report_exit_code(const l2h_report* report);
/* Strings owned by the report. */
L2H_API const char* l2h_report_json(const l2h_report* report);
L2H_API const char* l2h_report_summary(const l2h_report* report);
L2H_API void l2h_report_free(l2h_report* report);

#ifdef __cplusplus
}
#endif

#endif
