// Copyright 2026 The RegTopK Authors. All Rights Reserved.
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
// =============================================================================

/* C interface to the regtopk gradient-sparsification library.
 *
 * Every fallible call returns an rtk_status. On failure a description of the
 * last error on the calling thread is available from rtk_last_error().
 * Objects are opaque handles released with their matching *_free call.
 */
#ifndef REGTOPK_H_
#define REGTOPK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RTK_API __declspec(dllexport)
#else
#define RTK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtk_status {
  RTK_OK = 0,
  RTK_ERR_INVALID_ARGUMENT = 1,
  RTK_ERR_DIMENSION = 2,
  RTK_ERR_NUMERIC = 3,
  RTK_ERR_IO = 4,
  RTK_ERR_INDEFINITE = 5,
  RTK_ERR_PROTOCOL = 6,
  RTK_ERR_INTERNAL = 7
} rtk_status;

typedef enum rtk_sparsifier_kind {
  RTK_SPARSIFIER_NONE = 0,
  RTK_SPARSIFIER_TOPK = 1,
  RTK_SPARSIFIER_REGTOPK = 2
} rtk_sparsifier_kind;

/* Denominator of the posterior distortion: the previous accumulated gradient
 * (default) or the current one. */
typedef enum rtk_distortion_denominator {
  RTK_DISTORTION_PREVIOUS = 0,
  RTK_DISTORTION_CURRENT = 1
} rtk_distortion_denominator;

typedef enum rtk_format { RTK_FORMAT_CSV = 0, RTK_FORMAT_JSON = 1 } rtk_format;

#define RTK_MAX_HIDDEN 8

typedef struct rtk_sparsifier_params {
  int32_t kind;        /* rtk_sparsifier_kind */
  int64_t k;           /* used when sparsity <= 0 */
  double sparsity;     /* > 0: k = round(sparsity * J) clamped to [1, J] */
  double mu;
  double q;
  double div_tol;
  int32_t denominator; /* rtk_distortion_denominator */
} rtk_sparsifier_params;

typedef struct rtk_train_params {
  double learning_rate;
  int64_t iterations;
  uint64_t seed;
  uint32_t threads;
  uint32_t value_bits;
} rtk_train_params;

typedef struct rtk_linreg_params {
  int32_t workers;
  int32_t samples; /* per worker */
  int32_t dim;
  double mean_u;
  double var_u;
  double var_t;
  double noise;
} rtk_linreg_params;

typedef struct rtk_mlp_params {
  int32_t workers;
  int32_t batch;
  int32_t classes;
  int32_t input_dim;
  int32_t per_worker;
  int32_t test_samples;
  int32_t hidden_count;
  int32_t hidden[RTK_MAX_HIDDEN];
  int64_t eval_every;
  double separation;
  double noise;
} rtk_mlp_params;

typedef struct rtk_record {
  int64_t iter;
  double loss;
  int32_t has_gap;
  double gap;
  uint64_t comm_bits;
  double grad_norm;
  int32_t has_accuracy;
  double accuracy;
} rtk_record;

typedef struct rtk_run rtk_run;
typedef struct rtk_sparsifier rtk_sparsifier;

RTK_API const char* rtk_version(void);
RTK_API const char* rtk_last_error(void);

/* Defaults: kind regtopk, k 1, mu 0.5, q 1, div_tol 1e-12. */
RTK_API void rtk_sparsifier_params_default(rtk_sparsifier_params* p);
/* Defaults: lr 0.01, 100 iterations, seed 0, 1 thread, 64-bit values. */
RTK_API void rtk_train_params_default(rtk_train_params* p);
/* Defaults: 20 workers x 500 samples, dim 100, U 0, var_u 5, var_t 1, noise 0.5. */
RTK_API void rtk_linreg_params_default(rtk_linreg_params* p);
/* Defaults: 8 workers, batch 20, 4 classes, 16 inputs, hidden 128,64,
 * 250 samples per worker, 1000 test samples, eval every 50. */
RTK_API void rtk_mlp_params_default(rtk_mlp_params* p);

RTK_API rtk_status rtk_run_toy(const rtk_sparsifier_params* sp, const rtk_train_params* tp,
                               rtk_run** out);
RTK_API rtk_status rtk_run_linreg(const rtk_linreg_params* lp, const rtk_sparsifier_params* sp,
                                  const rtk_train_params* tp, rtk_run** out);
RTK_API rtk_status rtk_run_mlp(const rtk_mlp_params* mp, const rtk_sparsifier_params* sp,
                               const rtk_train_params* tp, rtk_run** out);
RTK_API void rtk_run_free(rtk_run* run);

RTK_API size_t rtk_run_record_count(const rtk_run* run);
RTK_API rtk_status rtk_run_get_record(const rtk_run* run, size_t index, rtk_record* out);
RTK_API size_t rtk_run_dim(const rtk_run* run);
RTK_API size_t rtk_run_k(const rtk_run* run);
RTK_API rtk_status rtk_run_final_weights(const rtk_run* run, double* out, size_t len);
RTK_API rtk_status rtk_run_write_records(const rtk_run* run, const char* path, rtk_format format);
/* Serializes the records into buf (NUL-terminated when it fits). *needed
 * receives the full length excluding the terminator. */
RTK_API rtk_status rtk_run_format_records(const rtk_run* run, rtk_format format, char* buf,
                                          size_t capacity, size_t* needed);
/* Writes worker_<n>.bin datasets and worker_<n>.sparse last messages into an
 * existing directory. */
RTK_API rtk_status rtk_run_dump_data(const rtk_run* run, const char* directory);

/* Stand-alone worker sparsifier. */
RTK_API rtk_status rtk_sparsifier_create(const rtk_sparsifier_params* sp, size_t dim,
                                         double weight, rtk_sparsifier** out);
RTK_API void rtk_sparsifier_free(rtk_sparsifier* s);
/* One step. global_prev must be non-NULL exactly for RegTop-k after the
 * first step. indices/values need room for min(k, dim) entries (dim for
 * kind none). */
RTK_API rtk_status rtk_sparsifier_step(rtk_sparsifier* s, const double* local_grad,
                                       const double* global_prev, size_t dim, size_t* indices,
                                       double* values, size_t capacity, size_t* count);
RTK_API rtk_status rtk_sparsifier_error(const rtk_sparsifier* s, double* out, size_t dim);

#ifdef __cplusplus
}
#endif

#endif /* REGTOPK_H_ */
