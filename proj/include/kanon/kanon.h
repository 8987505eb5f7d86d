/* C interface to the anonymization engine.
 *
 * All functions returning kanon_status set a thread-local error message
 * readable via kanon_last_error() on failure. Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * _free function; pointers documented as borrowed stay valid until their
 * owner is freed.
 */
#ifndef KANON_KANON_H
#define KANON_KANON_H

#include <stddef.h>

#if defined(_WIN32)
#define KANON_API __declspec(dllexport)
#else
#define KANON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kanon_status {
  KANON_OK = 0,
  KANON_ERROR_INFEASIBLE = 1, /* privacy target unreachable within budget */
  KANON_ERROR_INVALID = 2,    /* bad arguments, data, or policy semantics */
  KANON_ERROR_IO = 3,         /* file could not be read or written */
  KANON_ERROR_PARSE = 4,      /* malformed CSV or policy JSON */
  KANON_ERROR_INTERNAL = 5
} kanon_status;

typedef struct kanon_dataset kanon_dataset;
typedef struct kanon_policy kanon_policy;
typedef struct kanon_result kanon_result;

KANON_API const char* kanon_version(void);

/* Message of the most recent failure on this thread; "" when none. */
KANON_API const char* kanon_last_error(void);

/* delimiter 0 means ','; marker NULL means "*". An unquoted field equal to
 * the marker loads as a suppressed cell. */
KANON_API kanon_status kanon_dataset_read_csv(const char* path,
                                              char delimiter,
                                              const char* marker,
                                              kanon_dataset** out);
KANON_API kanon_status kanon_dataset_write_csv(const kanon_dataset* dataset,
                                               const char* path,
                                               char delimiter,
                                               const char* marker);
KANON_API size_t kanon_dataset_rows(const kanon_dataset* dataset);
KANON_API size_t kanon_dataset_columns(const kanon_dataset* dataset);
/* Borrowed; NULL when the column is out of range. */
KANON_API const char* kanon_dataset_attribute(const kanon_dataset* dataset,
                                              size_t column);
/* Borrowed; NULL when the cell is suppressed or out of range. */
KANON_API const char* kanon_dataset_cell(const kanon_dataset* dataset,
                                         size_t row, size_t column);
KANON_API void kanon_dataset_free(kanon_dataset* dataset);

KANON_API kanon_status kanon_policy_parse(const char* path,
                                          kanon_policy** out);
/* Borrowed; the policy's suppressed-cell marker. */
KANON_API const char* kanon_policy_marker(const kanon_policy* policy);
KANON_API void kanon_policy_free(kanon_policy* policy);

/* Loads every hierarchy declared by the policy and checks its structure. */
KANON_API kanon_status kanon_hierarchy_validate(const kanon_policy* policy);

/* Runs the full pipeline. On success *out holds the published dataset and
 * the report; target_met is always 1. */
KANON_API kanon_status kanon_anonymize(const kanon_dataset* dataset,
                                       const kanon_policy* policy,
                                       kanon_result** out);

/* Read-only audit of an existing table against the policy's targets.
 * Returns KANON_OK whenever the audit itself ran; consult target_met. */
KANON_API kanon_status kanon_check(const kanon_dataset* dataset,
                                   const kanon_policy* policy,
                                   kanon_result** out);

/* Borrowed published dataset; *out is NULL for check results. */
KANON_API kanon_status kanon_result_dataset(const kanon_result* result,
                                            const kanon_dataset** out);
/* Borrowed JSON report text. */
KANON_API const char* kanon_result_report_json(const kanon_result* result);
KANON_API int kanon_result_target_met(const kanon_result* result);
KANON_API void kanon_result_free(kanon_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KANON_KANON_H */
