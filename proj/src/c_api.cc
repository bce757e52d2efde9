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

#include "regtopk.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>

#include "regtopk/datagen.hpp"
#include "regtopk/errors.hpp"
#include "regtopk/experiments.hpp"
#include "regtopk/records.hpp"
#include "regtopk/sparsify.hpp"

struct rtk_run {
  regtopk::ExperimentRun run;
};

struct rtk_sparsifier {
  regtopk::SparsifierConfig cfg;
  regtopk::WorkerState state;
};

namespace {

thread_local std::string g_last_error;

rtk_status fail(rtk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps library exceptions onto status codes.
template <typename Fn>
rtk_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return RTK_OK;
  } catch (const regtopk::DimensionError& e) {
    return fail(RTK_ERR_DIMENSION, e.what());
  } catch (const regtopk::ParameterError& e) {
    return fail(RTK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const regtopk::NumericError& e) {
    return fail(RTK_ERR_NUMERIC, e.what());
  } catch (const regtopk::IoError& e) {
    return fail(RTK_ERR_IO, e.what());
  } catch (const regtopk::IndefiniteMatrixError& e) {
    return fail(RTK_ERR_INDEFINITE, e.what());
  } catch (const regtopk::ProtocolError& e) {
    return fail(RTK_ERR_PROTOCOL, e.what());
  } catch (const std::exception& e) {
    return fail(RTK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RTK_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw regtopk::ParameterError(what);
}

regtopk::SparsifierConfig to_config(const rtk_sparsifier_params& p) {
  regtopk::SparsifierConfig cfg;
  switch (p.kind) {
    case RTK_SPARSIFIER_NONE:
      cfg.kind = regtopk::SparsifierKind::kNone;
      break;
    case RTK_SPARSIFIER_TOPK:
      cfg.kind = regtopk::SparsifierKind::kTopK;
      break;
    case RTK_SPARSIFIER_REGTOPK:
      cfg.kind = regtopk::SparsifierKind::kRegTopK;
      break;
    default:
      throw regtopk::ParameterError("unknown sparsifier kind");
  }
  require(p.sparsity > 0.0 || p.k >= 1, "k must be >= 1");
  cfg.k = p.k >= 1 ? static_cast<std::size_t>(p.k) : 1;
  cfg.mu = p.mu;
  cfg.q = p.q;
  cfg.div_tol = p.div_tol;
  switch (p.denominator) {
    case RTK_DISTORTION_PREVIOUS:
      cfg.denominator = regtopk::DistortionDenominator::kPrevious;
      break;
    case RTK_DISTORTION_CURRENT:
      cfg.denominator = regtopk::DistortionDenominator::kCurrent;
      break;
    default:
      throw regtopk::ParameterError("unknown distortion denominator");
  }
  return cfg;
}

regtopk::RunOptions to_options(const rtk_sparsifier_params* sp, const rtk_train_params* tp) {
  require(sp != nullptr && tp != nullptr, "null parameter block");
  regtopk::RunOptions opts;
  opts.sparsifier = to_config(*sp);
  opts.sparsity = sp->sparsity > 0.0 ? sp->sparsity : 0.0;
  opts.learning_rate = tp->learning_rate;
  opts.iterations = tp->iterations;
  opts.seed = tp->seed;
  opts.threads = tp->threads;
  opts.value_bits = tp->value_bits;
  require(opts.value_bits > 0, "value_bits must be positive");
  return opts;
}

regtopk::RecordFormat to_format(rtk_format f) {
  switch (f) {
    case RTK_FORMAT_CSV:
      return regtopk::RecordFormat::kCsv;
    case RTK_FORMAT_JSON:
      return regtopk::RecordFormat::kJson;
  }
  throw regtopk::ParameterError("unknown record format");
}

void finish_run(regtopk::ExperimentRun&& run, rtk_run** out) {
  *out = new rtk_run{std::move(run)};
}

}  // namespace

extern "C" {

const char* rtk_version(void) { return "1.0.0"; }

const char* rtk_last_error(void) { return g_last_error.c_str(); }

void rtk_sparsifier_params_default(rtk_sparsifier_params* p) {
  if (p == nullptr) return;
  *p = rtk_sparsifier_params{};
  p->kind = RTK_SPARSIFIER_REGTOPK;
  p->k = 1;
  p->sparsity = 0.0;
  p->mu = 0.5;
  p->q = 1.0;
  p->div_tol = 1e-12;
  p->denominator = RTK_DISTORTION_PREVIOUS;
}

void rtk_train_params_default(rtk_train_params* p) {
  if (p == nullptr) return;
  *p = rtk_train_params{};
  p->learning_rate = 0.01;
  p->iterations = 100;
  p->seed = 0;
  p->threads = 1;
  p->value_bits = 64;
}

void rtk_linreg_params_default(rtk_linreg_params* p) {
  if (p == nullptr) return;
  const regtopk::LinRegGenConfig d;
  *p = rtk_linreg_params{d.workers, d.per_worker, d.dim, d.mean_of_means,
                         d.var_of_means, d.model_var, d.noise_var};
}

void rtk_mlp_params_default(rtk_mlp_params* p) {
  if (p == nullptr) return;
  const regtopk::MlpExperimentConfig d;
  *p = rtk_mlp_params{};
  p->workers = d.data.workers;
  p->batch = static_cast<int32_t>(d.batch);
  p->classes = d.data.classes;
  p->input_dim = d.data.input_dim;
  p->per_worker = d.data.per_worker;
  p->test_samples = d.data.test_samples;
  p->hidden_count = static_cast<int32_t>(d.hidden.size());
  for (std::size_t i = 0; i < d.hidden.size(); ++i) p->hidden[i] = d.hidden[i];
  p->eval_every = d.eval_every;
  p->separation = d.data.separation;
  p->noise = d.data.noise;
}

rtk_status rtk_run_toy(const rtk_sparsifier_params* sp, const rtk_train_params* tp,
                       rtk_run** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    finish_run(regtopk::run_toy_experiment(to_options(sp, tp)), out);
  });
}

rtk_status rtk_run_linreg(const rtk_linreg_params* lp, const rtk_sparsifier_params* sp,
                          const rtk_train_params* tp, rtk_run** out) {
  return guarded([&] {
    require(out != nullptr && lp != nullptr, "null argument");
    regtopk::LinRegGenConfig gen;
    gen.workers = lp->workers;
    gen.per_worker = lp->samples;
    gen.dim = lp->dim;
    gen.mean_of_means = lp->mean_u;
    gen.var_of_means = lp->var_u;
    gen.model_var = lp->var_t;
    gen.noise_var = lp->noise;
    finish_run(regtopk::run_linreg_experiment(gen, to_options(sp, tp)), out);
  });
}

rtk_status rtk_run_mlp(const rtk_mlp_params* mp, const rtk_sparsifier_params* sp,
                       const rtk_train_params* tp, rtk_run** out) {
  return guarded([&] {
    require(out != nullptr && mp != nullptr, "null argument");
    require(mp->hidden_count >= 0 && mp->hidden_count <= RTK_MAX_HIDDEN, "bad hidden_count");
    require(mp->batch >= 1, "batch must be >= 1");
    regtopk::MlpExperimentConfig cfg;
    cfg.data.workers = mp->workers;
    cfg.data.classes = mp->classes;
    cfg.data.input_dim = mp->input_dim;
    cfg.data.per_worker = mp->per_worker;
    cfg.data.test_samples = mp->test_samples;
    cfg.data.separation = mp->separation;
    cfg.data.noise = mp->noise;
    cfg.hidden.assign(mp->hidden, mp->hidden + mp->hidden_count);
    cfg.batch = static_cast<std::size_t>(mp->batch);
    cfg.eval_every = mp->eval_every;
    finish_run(regtopk::run_mlp_experiment(cfg, to_options(sp, tp)), out);
  });
}

void rtk_run_free(rtk_run* run) { delete run; }

size_t rtk_run_record_count(const rtk_run* run) {
  return run == nullptr ? 0 : run->run.train.records.size();
}

rtk_status rtk_run_get_record(const rtk_run* run, size_t index, rtk_record* out) {
  return guarded([&] {
    require(run != nullptr && out != nullptr, "null argument");
    require(index < run->run.train.records.size(), "record index out of range");
    const auto& r = run->run.train.records[index];
    *out = rtk_record{};
    out->iter = r.t;
    out->loss = r.global_loss;
    out->has_gap = r.optimality_gap.has_value();
    out->gap = r.optimality_gap.value_or(0.0);
    out->comm_bits = r.comm_bits_cum;
    out->grad_norm = r.grad_norm;
    out->has_accuracy = r.accuracy.has_value();
    out->accuracy = r.accuracy.value_or(0.0);
  });
}

size_t rtk_run_dim(const rtk_run* run) { return run == nullptr ? 0 : run->run.train.final_w.size(); }

size_t rtk_run_k(const rtk_run* run) { return run == nullptr ? 0 : run->run.k; }

rtk_status rtk_run_final_weights(const rtk_run* run, double* out, size_t len) {
  return guarded([&] {
    require(run != nullptr && out != nullptr, "null argument");
    const auto& w = run->run.train.final_w;
    regtopk::require_same_size(len, w.size(), "rtk_run_final_weights");
    std::memcpy(out, w.data(), w.size() * sizeof(double));
  });
}

rtk_status rtk_run_write_records(const rtk_run* run, const char* path, rtk_format format) {
  return guarded([&] {
    require(run != nullptr && path != nullptr, "null argument");
    regtopk::emit_records(std::string(path), run->run.train.records, to_format(format));
  });
}

rtk_status rtk_run_format_records(const rtk_run* run, rtk_format format, char* buf,
                                  size_t capacity, size_t* needed) {
  return guarded([&] {
    require(run != nullptr && needed != nullptr, "null argument");
    const std::string text = regtopk::format_records(run->run.train.records, to_format(format));
    *needed = text.size();
    if (buf != nullptr && capacity > text.size()) {
      std::memcpy(buf, text.c_str(), text.size() + 1);
    }
  });
}

rtk_status rtk_run_dump_data(const rtk_run* run, const char* directory) {
  return guarded([&] {
    require(run != nullptr && directory != nullptr, "null argument");
    const std::filesystem::path dir(directory);
    if (!std::filesystem::is_directory(dir)) {
      throw regtopk::IoError(std::string("not a directory: ") + directory);
    }
    const auto& r = run->run;
    for (std::size_t n = 0; n < r.datasets.size(); ++n) {
      const std::string stem = "worker_" + std::to_string(n);
      regtopk::write_dataset((dir / (stem + ".bin")).string(), r.datasets[n]);
      if (n < r.train.last_sent.size()) {
        const auto path = (dir / (stem + ".sparse")).string();
        std::ofstream out(path);
        if (!out) throw regtopk::IoError("cannot open " + path);
        regtopk::write_sparse_gradient(out, r.train.last_sent[n]);
        if (!out) throw regtopk::IoError("write failed: " + path);
      }
    }
  });
}

rtk_status rtk_sparsifier_create(const rtk_sparsifier_params* sp, size_t dim, double weight,
                                 rtk_sparsifier** out) {
  return guarded([&] {
    require(sp != nullptr && out != nullptr, "null argument");
    require(dim >= 1, "dim must be >= 1");
    require(weight >= 0.0, "weight must be non-negative");
    auto cfg = to_config(*sp);
    if (sp->sparsity > 0.0) cfg.k = regtopk::k_from_sparsity(sp->sparsity, dim);
    cfg.validate(dim);
    *out = new rtk_sparsifier{cfg, regtopk::WorkerState::initial(dim, weight)};
  });
}

void rtk_sparsifier_free(rtk_sparsifier* s) { delete s; }

rtk_status rtk_sparsifier_step(rtk_sparsifier* s, const double* local_grad,
                               const double* global_prev, size_t dim, size_t* indices,
                               double* values, size_t capacity, size_t* count) {
  return guarded([&] {
    require(s != nullptr && local_grad != nullptr && indices != nullptr && values != nullptr &&
                count != nullptr,
            "null argument");
    regtopk::require_same_size(dim, s->state.error.size(), "rtk_sparsifier_step");
    const regtopk::DenseVector grad(std::vector<double>(local_grad, local_grad + dim));
    std::optional<regtopk::DenseVector> prev;
    if (global_prev != nullptr) prev.emplace(std::vector<double>(global_prev, global_prev + dim));
    auto outcome = regtopk::sparsify_step(s->state, grad, prev ? &*prev : nullptr, s->cfg);
    require(outcome.sent.nnz() <= capacity, "output buffers too small");
    std::copy(outcome.sent.indices.begin(), outcome.sent.indices.end(), indices);
    std::copy(outcome.sent.values.begin(), outcome.sent.values.end(), values);
    *count = outcome.sent.nnz();
    s->state = std::move(outcome.state);
  });
}

rtk_status rtk_sparsifier_error(const rtk_sparsifier* s, double* out, size_t dim) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    regtopk::require_same_size(dim, s->state.error.size(), "rtk_sparsifier_error");
    std::copy(s->state.error.begin(), s->state.error.end(), out);
  });
}

}  // extern "C"
