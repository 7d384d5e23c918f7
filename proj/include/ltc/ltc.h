#ifndef LTC_LTC_H
#define LTC_LTC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define LTC_API __attribute__((visibility("default")))
#else
#define LTC_API
#endif

/* Status codes. Nonzero values name the failing condition; ltc_last_error() has the message. */
enum {
    LTC_OK = 0,
    LTC_NON_EISENSTEIN = 1,
    LTC_EVEN_PRIME_UNSUPPORTED = 2,
    LTC_DEGENERATE_SPEC = 3,
    LTC_NON_UNIT_INVERSE = 4,
    LTC_PRECISION_EXHAUSTED = 5,
    LTC_ZERO_RESIDUE = 6,
    LTC_FIELD_MISMATCH = 7,
    LTC_ILLEGAL_COMPOSITION_POINT = 8,
    LTC_NON_UNIT_LEADING = 9,
    LTC_RESIDUE_OBSTRUCTION = 10,
    LTC_FROBENIUS_INVARIANT_VIOLATED = 11,
    LTC_NON_UNIT_LINEAR_SOLVE = 12,
    LTC_SINGULAR_COMPANION = 13,
    LTC_NOT_DESCENDED = 14,
    LTC_NON_UNIT_ARGUMENT = 15,
    LTC_NON_UNIT_GAMMA = 16,
    LTC_PRINCIPAL_PART_UNKNOWN = 17,
    LTC_NOT_IN_PHI_IMAGE = 18,
    LTC_MODEL_REQUIRES_PERIOD = 19,
    LTC_PRINCIPAL_PART_AT_ZERO = 20,
    LTC_NOT_PSI_ONE = 21,
    LTC_DESCENT_FAILED = 22,
    LTC_SERIES_IN_OPERATOR_DIVERGED = 23,
    LTC_IDENTITY_VIOLATION = 24,
    LTC_COMPOSITE_CLOSED_FORM_MISMATCH = 25,
    LTC_POLE_AT_ZERO = 26,
    LTC_DEGENERATE_FACTOR = 27,
    LTC_NO_CONVERGENCE = 28,
    LTC_NON_COMMUTING_ACTION = 29,
    LTC_SIGN_VIOLATION = 30,
    LTC_NOT_CHAIN_MAP = 31,
    LTC_CONFIG_ERROR = 32,
    LTC_PARSE_ERROR = 33,
    LTC_INVALID_ARGUMENT = 98,
    LTC_INTERNAL_ERROR = 99
};

typedef struct ltc_context ltc_context; /* field, formal group and operator engines */
typedef struct ltc_report ltc_report;   /* result of a verification run */

LTC_API const char* ltc_version(void);
LTC_API const char* ltc_status_name(int status);
/* message of the last failing call on this thread, "" if none */
LTC_API const char* ltc_last_error(void);
/* strings returned through char** out parameters are released with this */
LTC_API void ltc_string_free(char* s);

/* config_json uses the keys of the run configuration: p, field, degree, eisenstein, model, prec, M, N */
LTC_API int ltc_context_create(const char* config_json, ltc_context** out);
LTC_API void ltc_context_destroy(ltc_context* ctx);
LTC_API int ltc_context_describe(const ltc_context* ctx, char** out);

/* [pi](Z), the group law up to total degree `degree` and log_LT, as text */
LTC_API int ltc_fg_dump(const ltc_context* ctx, long degree, char** out);
/* (d_inv^n (1+Z)^a)(0) = a^n as "value + O(p^M)"; multiplicative model */
LTC_API int ltc_mellin_eval(const ltc_context* ctx, long a, long n, char** out);
/* regulator composite and closed form for g given as "builtin:cyclo(c)" or a series in Z;
   JSON object with both values and whether they match */
LTC_API int ltc_regulator(const ltc_context* ctx, const char* g_spec, long r, long a, char** out_json);
/* self-duality check of the Koszul complex in d variables; JSON with the alpha matrices */
LTC_API int ltc_koszul_selfdual(int d, char** out_json);

/* runs the configured suites; LTC_OK means the run completed, not that every identity holds */
LTC_API int ltc_verify(const char* config_json, ltc_report** out);
LTC_API int ltc_report_all_pass(const ltc_report* rep);
LTC_API long ltc_report_failures(const ltc_report* rep);
LTC_API long ltc_report_size(const ltc_report* rep);
/* format: "json" or "text" */
LTC_API int ltc_report_render(const ltc_report* rep, const char* format, char** out);
LTC_API void ltc_report_destroy(ltc_report* rep);

#ifdef __cplusplus
}
#endif

#endif
