#ifndef LOGMATCH_H
#define LOGMATCH_H

/* C interface to the logmatch core. Every number crosses the boundary as a
 * decimal string; all results come back as tables of strings. Functions
 * return LM_OK or an error status, with a message in lm_last_error(). */

#include <stddef.h>

#if defined(_WIN32)
#define LM_API __declspec(dllexport)
#else
#define LM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lm_status {
    LM_OK = 0,
    LM_E_USAGE,
    LM_E_PARSE,
    LM_E_DOMAIN,
    LM_E_BRACKET,
    LM_E_RANK,
    LM_E_NONCONVERGENCE,
    LM_E_POLE,
    LM_E_BRANCH,
    LM_E_PARITY,
    LM_E_NORMALIZATION,
    LM_E_INPUT,
    LM_E_NO_CLOSED_FORM,
    LM_E_TAYLOR_BLIND,
    LM_E_CUTOFF_TOO_SMALL,
    LM_E_STIFFNESS,
    LM_E_NO_CROSSING,
    LM_E_SEARCH_FAILURE,
    LM_E_TRACKING_FAILURE,
    LM_E_RANGE,
    LM_E_INCONCLUSIVE,
    LM_E_IO,
    LM_E_INTERNAL
} lm_status;

typedef enum lm_side { LM_SIDE_LEFT = 0, LM_SIDE_RIGHT = 1 } lm_side;

/* -1 picks the model's default method */
typedef enum lm_method {
    LM_METHOD_DEFAULT = -1,
    LM_METHOD_CLOSED = 0,
    LM_METHOD_AIRY = 1,
    LM_METHOD_HIERARCHY = 2
} lm_method;

typedef struct lm_model lm_model;
typedef struct lm_table lm_table;

/* Thread-local; valid until the next failing call on the same thread. */
LM_API const char* lm_last_error(void);
LM_API const char* lm_status_name(lm_status status);

/* digits: working precision, at least 30. */
LM_API lm_status lm_model_parse(const char* literal, int digits, lm_model** out);
LM_API void lm_model_free(lm_model* model);
/* Canonical literal; owned by the model. */
LM_API const char* lm_model_literal(const lm_model* model);
LM_API const char* lm_model_kind(const lm_model* model);

/* display_digits <= 0 prints every digit the working precision carries. */
LM_API lm_status lm_format_decimal(const char* text, int digits, int display_digits, char* buf, size_t size);

/* "n,degree,E0" */
LM_API lm_status lm_convergence_table(const lm_model* model, const int* orders, size_t count, int raw_degree,
                                      int display_digits, lm_table** out);
/* "k,L_left_k,L_right_k" */
LM_API lm_status lm_series_table(const lm_model* model, int order, lm_method method, int display_digits,
                                 lm_table** out);
/* "E0" */
LM_API lm_status lm_exact_ground_state(const lm_model* model, int display_digits, lm_table** out);
/* "re,im,kind" */
LM_API lm_status lm_singularity(const lm_model* model, lm_side side, int display_digits, lm_table** out);
/* "E,L_left,L_right" from the closed forms */
LM_API lm_status lm_figure(const lm_model* model, const char* emin, const char* emax, int steps, int display_digits,
                           lm_table** out);

typedef struct lm_rpm_options {
    int d;
    int d_min;
    int d_max;
    double window_lo;
    double window_hi;
    int grid;
} lm_rpm_options;

LM_API void lm_rpm_options_default(lm_rpm_options* options);

/* Anharmonic model only. "E,L_left,L_right,note" */
LM_API lm_status lm_rpm_curves(const lm_model* model, const char* emin, const char* emax, int steps,
                               const lm_rpm_options* options, int display_digits, lm_table** out);
/* "D,E,g0,digits,note" */
LM_API lm_status lm_rpm_solve(const lm_model* model, const lm_rpm_options* options, int display_digits,
                              lm_table** out);
/* Crossing energy of a curves table's L_left and L_right columns. */
LM_API lm_status lm_rpm_crossing(const lm_table* curves, int digits, int display_digits, char* buf, size_t size);

LM_API size_t lm_table_rows(const lm_table* table);
LM_API size_t lm_table_cols(const lm_table* table);
LM_API const char* lm_table_header(const lm_table* table, size_t col);
/* Empty string for a missing value; NULL when out of range. */
LM_API const char* lm_table_cell(const lm_table* table, size_t row, size_t col);
LM_API void lm_table_free(lm_table* table);

#ifdef __cplusplus
}
#endif

#endif
