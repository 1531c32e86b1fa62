#ifndef MOSCO1D_H
#define MOSCO1D_H

/* C interface to the mosco1d library. All handles are opaque; every call
 * returns an m1d_status, and m1d_last_error() describes the most recent
 * failure on the calling thread. Strings returned through char** are owned
 * by the caller and released with m1d_string_free(). */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define M1D_API __declspec(dllexport)
#else
#define M1D_API __attribute__((visibility("default")))
#endif

typedef enum {
    M1D_OK = 0,
    M1D_ERR_CONFIG = 2,    /* malformed or out-of-range configuration */
    M1D_ERR_NUMERICAL = 3, /* a numerical routine did not converge */
    M1D_ERR_IO = 4,        /* output could not be written */
    M1D_ERR_MISMATCH = 5,  /* named examples ran but did not reproduce */
    M1D_ERR_ARGUMENT = 6,  /* null handle or invalid argument */
    M1D_ERR_INTERNAL = 7
} m1d_status;

typedef struct m1d_scenario m1d_scenario;
typedef struct m1d_report m1d_report;

M1D_API const char* m1d_version(void);
M1D_API const char* m1d_last_error(void);

M1D_API m1d_status m1d_scenario_load(const char* path, m1d_scenario** out);
M1D_API m1d_status m1d_scenario_parse(const char* json_text, m1d_scenario** out);
M1D_API m1d_status m1d_scenario_serialize(const m1d_scenario* scenario, char** out_json);
M1D_API void m1d_scenario_free(m1d_scenario* scenario);

/* Human-readable boundary and global classification. */
M1D_API m1d_status m1d_classify(const m1d_scenario* scenario, char** out_text);

M1D_API m1d_status m1d_run_mosco(const m1d_scenario* scenario, int threads, m1d_report** out);
/* Writes errors.csv and report.md into out_dir (created if missing). */
M1D_API m1d_status m1d_report_write(const m1d_report* report, const char* out_dir);
/* Verdict of the column matching the limit boundary condition. */
M1D_API m1d_status m1d_report_verdict(const m1d_report* report, const char** out_verdict);
M1D_API m1d_status m1d_report_csv(const m1d_report* report, char** out_csv);
M1D_API void m1d_report_free(m1d_report* report);

/* Runs every named example, writes one sub-directory each plus summary.md.
 * Returns M1D_ERR_MISMATCH when an observed outcome differs from the
 * expected one; out_summary (optional) receives the summary table. */
M1D_API m1d_status m1d_paper_examples(const char* out_dir, int threads, char** out_summary);

M1D_API void m1d_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
