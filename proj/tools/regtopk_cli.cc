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

// Command-line driver for the toy, linear-regression and MLP experiments.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "regtopk.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFlags = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;
constexpr int kExitOther = 1;

// Flat JSON object whose keys are long flag names without dashes. Values
// become flag text; arrays are joined with commas.
std::string json_scalar_text(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ',';
      joined += json_scalar_text(key, e);
    }
    return joined;
  }
  throw CLI::ConversionError("config: unsupported value for '" + key + "'");
}

// Fills options not given on the command line from a JSON config file.
void apply_config_file(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw CLI::ConversionError("config: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw CLI::ExtrasError("config", std::vector<std::string>{key});
    }
    if (opt->count() > 0) continue;
    opt->add_result(json_scalar_text(key, value));
    opt->run_callback();
  }
}

struct SharedFlags {
  std::string sparsifier = "regtopk";
  std::int64_t k = 0;
  double sparsity = 0.0;
  double mu = 0.5;
  double q = 1.0;
  double lr = 0.01;
  std::int64_t iters = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  bool dump_data = false;
  unsigned threads = 1;
  std::string distortion = "previous";
  std::string config;

  CLI::Option* k_opt = nullptr;
  CLI::Option* sparsity_opt = nullptr;
};

void add_shared_flags(CLI::App* sub, SharedFlags& f) {
  sub->add_option("--sparsifier", f.sparsifier, "none | topk | regtopk")
      ->check(CLI::IsMember({"none", "topk", "regtopk"}))
      ->capture_default_str();
  f.k_opt = sub->add_option("--k", f.k, "entries sent per worker per step")
                ->check(CLI::PositiveNumber);
  f.sparsity_opt = sub->add_option("--sparsity", f.sparsity, "fraction k/J in (0, 1]")
                       ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--mu", f.mu, "regularizer temperature")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--q", f.q, "distortion assigned to previously unsent entries")
      ->capture_default_str();
  sub->add_option("--lr", f.lr, "learning rate")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--iters", f.iters, "training iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", f.seed, "random seed")->capture_default_str();
  sub->add_option("--out", f.out, "output path (stdout when omitted)");
  sub->add_option("--format", f.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_flag("--dump-data", f.dump_data,
                "write per-worker datasets and last sparse messages next to --out");
  sub->add_option("--threads", f.threads, "worker-evaluation threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--distortion", f.distortion, "previous | current distortion denominator")
      ->check(CLI::IsMember({"previous", "current"}))
      ->capture_default_str();
  sub->add_option("--config", f.config, "JSON file with flag values; explicit flags win");
}

std::vector<std::int32_t> parse_widths(const std::string& text) {
  std::vector<std::int32_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || v < 1) {
      throw CLI::ValidationError("--hidden", "widths must be positive integers: " + text);
    }
    out.push_back(v);
  }
  if (out.size() > RTK_MAX_HIDDEN) throw CLI::ValidationError("--hidden", "too many layers");
  return out;
}

int exit_code_for(rtk_status status) {
  switch (status) {
    case RTK_OK:
      return kExitOk;
    case RTK_ERR_INVALID_ARGUMENT:
    case RTK_ERR_DIMENSION:
      return kExitFlags;
    case RTK_ERR_NUMERIC:
    case RTK_ERR_INDEFINITE:
      return kExitNumeric;
    case RTK_ERR_IO:
      return kExitIo;
    default:
      return kExitOther;
  }
}

int report(rtk_status status, const char* what) {
  std::cerr << "regtopk: " << what << ": " << rtk_last_error() << '\n';
  return exit_code_for(status);
}

rtk_sparsifier_params sparsifier_params(const SharedFlags& f, double default_sparsity,
                                        std::int64_t default_k) {
  rtk_sparsifier_params p;
  rtk_sparsifier_params_default(&p);
  p.kind = f.sparsifier == "none"   ? RTK_SPARSIFIER_NONE
           : f.sparsifier == "topk" ? RTK_SPARSIFIER_TOPK
                                    : RTK_SPARSIFIER_REGTOPK;
  if (f.k_opt->count() > 0) {
    p.k = f.k;
  } else if (f.sparsity_opt->count() > 0) {
    p.sparsity = f.sparsity;
  } else if (default_sparsity > 0.0) {
    p.sparsity = default_sparsity;
  } else {
    p.k = default_k;
  }
  p.mu = f.mu;
  p.q = f.q;
  p.denominator = f.distortion == "current" ? RTK_DISTORTION_CURRENT : RTK_DISTORTION_PREVIOUS;
  return p;
}

rtk_train_params train_params(const SharedFlags& f) {
  rtk_train_params p;
  rtk_train_params_default(&p);
  p.learning_rate = f.lr;
  p.iterations = f.iters;
  p.seed = f.seed;
  p.threads = f.threads;
  return p;
}

nlohmann::json shared_json(const std::string& command, const SharedFlags& f,
                           const rtk_sparsifier_params& sp) {
  nlohmann::json j;
  j["command"] = command;
  j["sparsifier"] = f.sparsifier;
  if (sp.sparsity > 0.0) {
    j["sparsity"] = sp.sparsity;
  } else {
    j["k"] = sp.k;
  }
  j["mu"] = f.mu;
  j["q"] = f.q;
  j["lr"] = f.lr;
  j["iters"] = f.iters;
  j["seed"] = f.seed;
  j["out"] = f.out;
  j["format"] = f.format;
  j["dump-data"] = f.dump_data;
  j["threads"] = f.threads;
  j["distortion"] = f.distortion;
  return j;
}

// Writes records (and optionally the data dump) for a finished run.
int emit(rtk_run* run, const SharedFlags& f) {
  const rtk_format format = f.format == "json" ? RTK_FORMAT_JSON : RTK_FORMAT_CSV;
  for (std::size_t i = 0; i < rtk_run_record_count(run); ++i) {
    rtk_record rec;
    rtk_run_get_record(run, i, &rec);
    if (rec.loss != rec.loss) {
      std::cerr << "regtopk: NaN loss at iteration " << rec.iter << '\n';
      return kExitNumeric;
    }
  }
  if (f.out.empty()) {
    std::size_t needed = 0;
    rtk_status st = rtk_run_format_records(run, format, nullptr, 0, &needed);
    if (st != RTK_OK) return report(st, "format");
    std::string text(needed + 1, '\0');
    st = rtk_run_format_records(run, format, text.data(), text.size(), &needed);
    if (st != RTK_OK) return report(st, "format");
    text.resize(needed);
    std::cout << text;
    std::cout.flush();
    if (!std::cout) return kExitIo;
  } else {
    const rtk_status st = rtk_run_write_records(run, f.out.c_str(), format);
    if (st != RTK_OK) return report(st, "write records");
  }
  if (f.dump_data) {
    const std::string dir = f.out.empty() ? std::string("regtopk_data") : f.out + ".data";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      std::cerr << "regtopk: cannot create " << dir << ": " << ec.message() << '\n';
      return kExitIo;
    }
    const rtk_status st = rtk_run_dump_data(run, dir.c_str());
    if (st != RTK_OK) return report(st, "dump data");
  }
  return kExitOk;
}

int finish(rtk_status status, rtk_run* run, const SharedFlags& f) {
  // run is only valid when status is RTK_OK.
  if (status != RTK_OK) return report(status, "run failed");
  const int code = emit(run, f);
  rtk_run_free(run);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-k / RegTop-k sparsified distributed SGD experiments"};
  app.require_subcommand(1);

  SharedFlags toy;
  toy.lr = 0.9;
  toy.iters = 100;
  CLI::App* toy_cmd = app.add_subcommand("toy", "two-worker logistic toy");
  add_shared_flags(toy_cmd, toy);

  SharedFlags lin;
  lin.lr = 0.01;
  lin.iters = 2000;
  rtk_linreg_params lp;
  rtk_linreg_params_default(&lp);
  CLI::App* lin_cmd = app.add_subcommand("linreg", "Gaussian linear regression, optimality gap");
  add_shared_flags(lin_cmd, lin);
  lin_cmd->add_option("--workers", lp.workers)->check(CLI::PositiveNumber)->capture_default_str();
  lin_cmd->add_option("--samples", lp.samples, "samples per worker")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lin_cmd->add_option("--dim", lp.dim)->check(CLI::PositiveNumber)->capture_default_str();
  lin_cmd->add_option("--mean-u", lp.mean_u, "mean of the per-worker model means")
      ->capture_default_str();
  lin_cmd->add_option("--var-u", lp.var_u, "variance of the per-worker model means")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  lin_cmd->add_option("--var-t", lp.var_t, "variance of model entries around their mean")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  lin_cmd->add_option("--noise", lp.noise, "label noise variance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  SharedFlags mlp;
  mlp.lr = 0.01;
  mlp.iters = 3000;
  rtk_mlp_params mp;
  rtk_mlp_params_default(&mp);
  std::string hidden = "128,64";
  CLI::App* mlp_cmd = app.add_subcommand("mlp", "MLP on Gaussian clusters, held-out accuracy");
  add_shared_flags(mlp_cmd, mlp);
  mlp_cmd->add_option("--workers", mp.workers)->check(CLI::PositiveNumber)->capture_default_str();
  mlp_cmd->add_option("--batch", mp.batch)->check(CLI::PositiveNumber)->capture_default_str();
  mlp_cmd->add_option("--hidden", hidden, "comma-separated hidden widths")->capture_default_str();
  mlp_cmd->add_option("--classes", mp.classes)->check(CLI::Range(2, 1000))->capture_default_str();
  mlp_cmd->add_option("--eval-every", mp.eval_every)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    for (auto [sub, flags] : {std::pair{toy_cmd, &toy}, {lin_cmd, &lin}, {mlp_cmd, &mlp}}) {
      if (sub->parsed() && !flags->config.empty()) apply_config_file(sub, flags->config);
    }
    for (SharedFlags* f : {&toy, &lin, &mlp}) {
      if (f->k_opt->count() > 0 && f->sparsity_opt->count() > 0) {
        throw CLI::ValidationError("--k", "--k and --sparsity are mutually exclusive");
      }
      if (f->sparsity_opt->count() > 0 && !(f->sparsity > 0.0)) {
        throw CLI::ValidationError("--sparsity", "must lie in (0, 1]");
      }
    }
    if (mlp_cmd->parsed()) {
      const auto widths = parse_widths(hidden);
      mp.hidden_count = static_cast<std::int32_t>(widths.size());
      std::copy(widths.begin(), widths.end(), mp.hidden);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFlags;
  }

  rtk_run* run = nullptr;
  if (toy_cmd->parsed()) {
    const auto sp = sparsifier_params(toy, 0.0, 1);
    const auto tp = train_params(toy);
    std::cerr << shared_json("toy", toy, sp).dump() << '\n';
    const rtk_status st = rtk_run_toy(&sp, &tp, &run);
    return finish(st, run, toy);
  }
  if (lin_cmd->parsed()) {
    const auto sp = sparsifier_params(lin, 0.6, 0);
    const auto tp = train_params(lin);
    auto j = shared_json("linreg", lin, sp);
    j["workers"] = lp.workers;
    j["samples"] = lp.samples;
    j["dim"] = lp.dim;
    j["mean-u"] = lp.mean_u;
    j["var-u"] = lp.var_u;
    j["var-t"] = lp.var_t;
    j["noise"] = lp.noise;
    std::cerr << j.dump() << '\n';
    const rtk_status st = rtk_run_linreg(&lp, &sp, &tp, &run);
    return finish(st, run, lin);
  }
  const auto sp = sparsifier_params(mlp, 0.001, 0);
  const auto tp = train_params(mlp);
  auto j = shared_json("mlp", mlp, sp);
  j["workers"] = mp.workers;
  j["batch"] = mp.batch;
  j["hidden"] = hidden;
  j["classes"] = mp.classes;
  j["eval-every"] = mp.eval_every;
  std::cerr << j.dump() << '\n';
  const rtk_status st = rtk_run_mlp(&mp, &sp, &tp, &run);
    return finish(st, run, mlp);
}
