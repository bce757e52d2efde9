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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "golden_toy.hpp"

namespace {

struct RunDeleter {
  void operator()(rtk_run* r) const { rtk_run_free(r); }
};
using RunPtr = std::unique_ptr<rtk_run, RunDeleter>;

RunPtr toy(int32_t kind) {
  rtk_sparsifier_params sp;
  rtk_sparsifier_params_default(&sp);
  sp.kind = kind;
  rtk_train_params tp;
  rtk_train_params_default(&tp);
  tp.learning_rate = 0.9;
  tp.iterations = 100;
  rtk_run* run = nullptr;
  EXPECT_EQ(rtk_run_toy(&sp, &tp, &run), RTK_OK) << rtk_last_error();
  return RunPtr(run);
}

TEST(CApiTest, Version) { EXPECT_STREQ(rtk_version(), "1.0.0"); }

TEST(CApiTest, ToyRuns) {
  for (int32_t kind : {RTK_SPARSIFIER_NONE, RTK_SPARSIFIER_TOPK, RTK_SPARSIFIER_REGTOPK}) {
    const auto run = toy(kind);
    ASSERT_NE(run, nullptr);
    ASSERT_EQ(rtk_run_record_count(run.get()), 101u);
    EXPECT_EQ(rtk_run_dim(run.get()), 2u);
    const auto& ref = kind == RTK_SPARSIFIER_NONE   ? regtopk::golden::kToyNone
                      : kind == RTK_SPARSIFIER_TOPK ? regtopk::golden::kToyTopK
                                                    : regtopk::golden::kToyRegTopK;
    for (size_t t = 0; t <= 100; ++t) {
      rtk_record rec;
      ASSERT_EQ(rtk_run_get_record(run.get(), t, &rec), RTK_OK);
      EXPECT_NEAR(rec.loss, ref[t], 1e-12);
      EXPECT_EQ(rec.has_gap, 0);
      EXPECT_EQ(rec.has_accuracy, 0);
    }
  }
}

TEST(CApiTest, LinregWithGap) {
  rtk_linreg_params lp;
  rtk_linreg_params_default(&lp);
  lp.workers = 3;
  lp.samples = 20;
  lp.dim = 5;
  rtk_sparsifier_params sp;
  rtk_sparsifier_params_default(&sp);
  sp.sparsity = 0.4;
  rtk_train_params tp;
  rtk_train_params_default(&tp);
  tp.iterations = 10;
  rtk_run* raw = nullptr;
  ASSERT_EQ(rtk_run_linreg(&lp, &sp, &tp, &raw), RTK_OK) << rtk_last_error();
  RunPtr run(raw);
  EXPECT_EQ(rtk_run_k(run.get()), 2u);
  rtk_record rec;
  ASSERT_EQ(rtk_run_get_record(run.get(), 10, &rec), RTK_OK);
  EXPECT_EQ(rec.has_gap, 1);
  EXPECT_EQ(rec.comm_bits, 10u * 3 * 2 * (64 + 3));
  std::vector<double> w(5);
  EXPECT_EQ(rtk_run_final_weights(run.get(), w.data(), w.size()), RTK_OK);
  EXPECT_EQ(rtk_run_final_weights(run.get(), w.data(), 4), RTK_ERR_DIMENSION);
  EXPECT_EQ(rtk_run_get_record(run.get(), 11, &rec), RTK_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, FormatRecordsReportsSize) {
  const auto run = toy(RTK_SPARSIFIER_TOPK);
  size_t needed = 0;
  EXPECT_EQ(rtk_run_format_records(run.get(), RTK_FORMAT_CSV, nullptr, 0, &needed), RTK_OK);
  ASSERT_GT(needed, 0u);
  std::string buf(needed + 1, '\0');
  size_t again = 0;
  ASSERT_EQ(rtk_run_format_records(run.get(), RTK_FORMAT_CSV, buf.data(), buf.size(), &again), RTK_OK);
  EXPECT_EQ(again, needed);
  EXPECT_EQ(std::strlen(buf.c_str()), needed);
  EXPECT_EQ(buf.rfind("iter,loss,gap,comm_bits,grad_norm,accuracy\n", 0), 0u);
}

TEST(CApiTest, WriteAndDump) {
  const auto run = toy(RTK_SPARSIFIER_REGTOPK);
  const auto dir = std::filesystem::temp_directory_path() / "rtk_capi_dump";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  EXPECT_EQ(rtk_run_write_records(run.get(), (dir / "r.json").c_str(), RTK_FORMAT_JSON), RTK_OK);
  EXPECT_EQ(rtk_run_dump_data(run.get(), dir.c_str()), RTK_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "worker_0.bin"));
  EXPECT_TRUE(std::filesystem::exists(dir / "worker_1.sparse"));
  EXPECT_EQ(rtk_run_write_records(run.get(), "/nonexistent/x.csv", RTK_FORMAT_CSV), RTK_ERR_IO);
  EXPECT_NE(std::string(rtk_last_error()), "");
  std::filesystem::remove_all(dir);
}

TEST(CApiTest, InvalidArguments) {
  rtk_sparsifier_params sp;
  rtk_sparsifier_params_default(&sp);
  rtk_train_params tp;
  rtk_train_params_default(&tp);
  rtk_run* run = nullptr;
  EXPECT_EQ(rtk_run_toy(&sp, &tp, nullptr), RTK_ERR_INVALID_ARGUMENT);
  sp.k = 5;
  EXPECT_EQ(rtk_run_toy(&sp, &tp, &run), RTK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(run, nullptr);
  sp.k = 1;
  sp.mu = -1;
  EXPECT_EQ(rtk_run_toy(&sp, &tp, &run), RTK_ERR_INVALID_ARGUMENT);
  sp.mu = 0.5;
  // A wildly large step makes least squares diverge to inf and then NaN.
  rtk_linreg_params lp;
  rtk_linreg_params_default(&lp);
  lp.workers = 2;
  lp.samples = 10;
  lp.dim = 4;
  sp.kind = RTK_SPARSIFIER_NONE;
  tp.learning_rate = 1e3;
  tp.iterations = 500;
  EXPECT_EQ(rtk_run_linreg(&lp, &sp, &tp, &run), RTK_ERR_NUMERIC);
  EXPECT_EQ(run, nullptr);
  rtk_run_free(nullptr);
}

TEST(CApiTest, StandaloneSparsifier) {
  rtk_sparsifier_params sp;
  rtk_sparsifier_params_default(&sp);
  sp.k = 2;
  rtk_sparsifier* s = nullptr;
  ASSERT_EQ(rtk_sparsifier_create(&sp, 4, 0.5, &s), RTK_OK);
  const double g[4] = {1, -5, 3, 0.5};
  size_t idx[2];
  double val[2];
  size_t count = 0;
  ASSERT_EQ(rtk_sparsifier_step(s, g, nullptr, 4, idx, val, 2, &count), RTK_OK);
  ASSERT_EQ(count, 2u);
  EXPECT_EQ(idx[0], 1u);
  EXPECT_EQ(idx[1], 2u);
  EXPECT_EQ(val[0], -5.0);
  double err[4];
  ASSERT_EQ(rtk_sparsifier_error(s, err, 4), RTK_OK);
  EXPECT_EQ(err[0], 1.0);
  EXPECT_EQ(err[1], 0.0);
  // A RegTop-k worker needs the previous aggregate from now on.
  EXPECT_EQ(rtk_sparsifier_step(s, g, nullptr, 4, idx, val, 2, &count), RTK_ERR_PROTOCOL);
  const double global[4] = {0, -2.5, 1.5, 0};
  EXPECT_EQ(rtk_sparsifier_step(s, g, global, 4, idx, val, 1, &count), RTK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(rtk_sparsifier_step(s, g, global, 4, idx, val, 2, &count), RTK_OK);
  EXPECT_EQ(rtk_sparsifier_step(s, g, global, 3, idx, val, 2, &count), RTK_ERR_DIMENSION);
  rtk_sparsifier_free(s);
}

}  // namespace
