#ifndef NSF_NSF_H
#define NSF_NSF_H

/* C interface to the viscous shock stability lab. Every function returns an
 * nsf_status; on failure nsf_last_error() describes the problem for the
 * calling thread. Strings handed out by the library are released with
 * nsf_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#define NSF_API __declspec(dllexport)
#else
#define NSF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsf_status {
    NSF_OK = 0,
    NSF_ERR_VALIDATION = 1,
    NSF_ERR_NUMERICAL = 2,
    NSF_ERR_IO = 3,
    NSF_ERR_ARGUMENT = 4
} nsf_status;

typedef struct nsf_scenario nsf_scenario;
typedef struct nsf_result nsf_result;

typedef struct nsf_record {
    double t, X, Xdot, E_weighted;
    double G1, G2, GS;
    double D_rho, D_u1, D_th1, D_u2, D_th2, D_weighted;
    double Y[6];
    double P[5];
    double sup_err, l2_err, h1_err;
} nsf_record;

NSF_API const char* nsf_last_error(void);
NSF_API void nsf_string_free(char* s);

/* Scenario configuration. */
NSF_API nsf_status nsf_scenario_default(nsf_scenario** out);
NSF_API nsf_status nsf_scenario_load(const char* path, nsf_scenario** out);
NSF_API nsf_status nsf_scenario_parse(const char* text, nsf_scenario** out);
/* key is "section.key"; value uses the config file syntax. */
NSF_API nsf_status nsf_scenario_set(nsf_scenario* s, const char* key, const char* value);
/* assignment is "section.key=value". */
NSF_API nsf_status nsf_scenario_override(nsf_scenario* s, const char* assignment);
NSF_API nsf_status nsf_scenario_validate(const nsf_scenario* s);
NSF_API void nsf_scenario_free(nsf_scenario* s);

/* Full run: closure, profile, simulation, diagnostics and output files. */
NSF_API nsf_status nsf_run(const nsf_scenario* s, nsf_result** out);
NSF_API size_t nsf_result_record_count(const nsf_result* r);
NSF_API nsf_status nsf_result_record(const nsf_result* r, size_t i, nsf_record* out);
/* Named summary entry (see summary.csv); text entries are not available here. */
NSF_API nsf_status nsf_result_summary_value(const nsf_result* r, const char* name, double* out);
NSF_API nsf_status nsf_result_summary_json(const nsf_result* r, char** out);
NSF_API nsf_status nsf_result_dissipation_json(const nsf_result* r, char** out);
NSF_API void nsf_result_free(nsf_result* r);

/* Reports as JSON text; *ok is set to 1 when every check passed. */
NSF_API nsf_status nsf_sweep(const nsf_scenario* s, char** report_json);
NSF_API nsf_status nsf_check_profile(const nsf_scenario* s, char** report_json, int* ok);
NSF_API nsf_status nsf_check_poincare(const nsf_scenario* s, char** report_json, int* ok);

#ifdef __cplusplus
}
#endif

#endif
