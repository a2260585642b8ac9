/* C interface to the loewner library. All functions are thread-compatible;
 * the last error message is stored per thread. */
#ifndef LOEWNER_H
#define LOEWNER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LW_API __declspec(dllexport)
#else
#define LW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lw_status {
  LW_OK = 0,
  LW_INVALID_ARGUMENT = 1,
  LW_DOMAIN = 2,
  LW_DIMENSION = 3,
  LW_HYPOTHESIS = 4,
  LW_CONVERGENCE = 5,
  LW_IO = 6,
  LW_PARSE = 7,
  LW_INTERNAL = 99
} lw_status;

typedef struct lw_matrix lw_matrix;
typedef struct lw_report lw_report;

LW_API const char* lw_version(void);
/* Message of the last failed call on this thread ("" if none). */
LW_API const char* lw_last_error(void);
/* Frees strings returned through char** out-parameters. */
LW_API void lw_string_free(char* s);

/* Symmetric matrices. data is row-major with dim*dim entries. */
LW_API lw_status lw_matrix_create(int dim, const double* data, lw_matrix** out);
LW_API lw_status lw_matrix_load(const char* path, lw_matrix** out);
LW_API lw_status lw_matrix_save(const lw_matrix* m, const char* path);
LW_API void lw_matrix_destroy(lw_matrix* m);
LW_API int lw_matrix_dim(const lw_matrix* m);
/* Copies dim*dim row-major entries into out (capacity in doubles). */
LW_API lw_status lw_matrix_copy_data(const lw_matrix* m, double* out, size_t capacity);

/* A sigma B for a kernel id such as "geometric" or "heinz:0.25". */
LW_API lw_status lw_mean(const char* kernel, const lw_matrix* a, const lw_matrix* b, lw_matrix** out);

typedef enum lw_relation { LW_LE = 0, LW_GE = 1, LW_EQ = 2, LW_INCOMPARABLE = 3 } lw_relation;

/* tol < 0 selects the default tolerance. */
LW_API lw_status lw_loewner_compare(const lw_matrix* x, const lw_matrix* y, double tol, lw_relation* out);
/* norm: op | trace | frobenius | kyfan:K | schatten:P */
LW_API lw_status lw_ui_norm(const lw_matrix* x, const char* norm, double* out);
/* Tightest s, t with sA <= B <= tA. */
LW_API lw_status lw_estimate_sandwich(const lw_matrix* a, const lw_matrix* b, double* s, double* t);

/* Runs verify | hunt | probe | scalarcheck. config_json may be NULL or a JSON
 * object with SuiteConfig fields; a "command" field is overridden by command. */
LW_API lw_status lw_run(const char* command, const char* config_json, lw_report** out);
LW_API lw_status lw_report_load(const char* path, lw_report** out);
LW_API lw_status lw_report_json(const lw_report* r, char** out);
LW_API lw_status lw_report_write(const lw_report* r, const char* path);
/* 1 if every non-audit check held, 0 otherwise. */
LW_API int lw_report_all_hold(const lw_report* r);
LW_API size_t lw_report_instance_count(const lw_report* r);
LW_API void lw_report_destroy(lw_report* r);

/* Re-evaluates re-checkable instance `index` of a report. On success the
 * certificate is returned as JSON, *holds and *audit are set. */
LW_API lw_status lw_recheck(const lw_report* r, size_t index, char** certificate_json, int* holds, int* audit);

#ifdef __cplusplus
}
#endif

#endif
