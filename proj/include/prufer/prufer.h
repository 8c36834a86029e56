/* Copyright prufer contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the prufer library. All handles are opaque; every fallible call returns a
 * prufer_status and records a message retrievable with prufer_last_error() on the same thread.
 */

#ifndef PRUFER_PRUFER_H
#define PRUFER_PRUFER_H

#include <stddef.h>
#include <stdint.h>

#if defined(PRUFER_BUILDING_LIBRARY)
#define PRUFER_API __attribute__((visibility("default")))
#else
#define PRUFER_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum prufer_status
{
  PRUFER_OK = 0,
  PRUFER_ERR_IO = 1,
  PRUFER_ERR_VALIDATION = 2, /* bad input, out-of-band energy, malformed spec */
  PRUFER_ERR_NUMERICAL = 3,  /* cross-validation or branch contract failure */
  PRUFER_ERR_ARGUMENT = 4,   /* null pointer or unknown enum string */
  PRUFER_ERR_INTERNAL = 5
} prufer_status;

typedef struct prufer_config prufer_config;
typedef struct prufer_table prufer_table;

PRUFER_API const char *prufer_version(void);

/* Message and category (e.g. "band_edge") of the last failure on this thread. */
PRUFER_API const char *prufer_last_error(void);
PRUFER_API const char *prufer_last_error_kind(void);

PRUFER_API prufer_status prufer_config_parse(const char *json, prufer_config **out);
PRUFER_API prufer_status prufer_config_load(const char *path, prufer_config **out);
PRUFER_API void prufer_config_free(prufer_config *config);
PRUFER_API prufer_status prufer_config_set_seed(prufer_config *config, uint64_t seed);
/* Output path and format stored in the config; empty string when unset. */
PRUFER_API const char *prufer_config_output(const prufer_config *config);
PRUFER_API const char *prufer_config_format(const prufer_config *config);

/* Runs an experiment. On PRUFER_OK, PRUFER_ERR_VALIDATION or PRUFER_ERR_NUMERICAL coming from a
 * completed check, *out may hold a table describing the outcome; free it with prufer_table_free.
 * threads <= 0 uses the default pool size. */
PRUFER_API prufer_status prufer_run(const prufer_config *config, const char *command, int threads,
                                    prufer_table **out);

PRUFER_API size_t prufer_table_rows(const prufer_table *table);
PRUFER_API size_t prufer_table_columns(const prufer_table *table);
PRUFER_API const char *prufer_table_column_name(const prufer_table *table, size_t column);
/* Numeric cell value; integers are converted. Fails for text cells. */
PRUFER_API prufer_status prufer_table_number(const prufer_table *table, size_t row, size_t column,
                                             double *out);
/* Cell formatted as it would appear in CSV. Valid until the table is freed. */
PRUFER_API const char *prufer_table_text(const prufer_table *table, size_t row, size_t column);
/* format is "csv" or "jsonl"; a NULL or "-" path writes to standard output. */
PRUFER_API prufer_status prufer_table_write(const prufer_table *table, const char *path,
                                            const char *format);
PRUFER_API void prufer_table_free(prufer_table *table);

/* Period-q Jacobi background with a[j] = a_{j+1}, b[j] = b_{j+1}. */
PRUFER_API prufer_status prufer_jacobi_discriminant(const double *a, const double *b, size_t q,
                                                    double energy, double *out);
PRUFER_API prufer_status prufer_jacobi_floquet(const double *a, const double *b, size_t q,
                                               double energy, double *k, double *omega,
                                               double *phi_e);

/* g = Lambda_kappa f for a q-periodic complex f given as separate real/imaginary arrays. */
PRUFER_API prufer_status prufer_lambda_kappa(const double *f_re, const double *f_im, size_t q,
                                             double kappa, double *g_re, double *g_im);

PRUFER_API prufer_status prufer_dfly_residual(double even_re, double even_im, double odd_re,
                                              double odd_im, double theta, double *out);

#ifdef __cplusplus
}
#endif

#endif
