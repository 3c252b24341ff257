/* Copyright 2026 The slicesim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// slicesim command-line front end.
//
//   slicesim fit          fit a latency model from a profile CSV
//   slicesim run          run one simulation, write a metrics report
//   slicesim sweep        run a parameter sweep, write a CSV
//   slicesim gen-workload write a synthetic trace CSV
//
// Exit codes: 0 success, 1 user error (bad input, bad config), 2 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicesim/cost_model.h"
#include "slicesim/errors.h"
#include "slicesim/experiment.h"
#include "slicesim/run_config.h"
#include "slicesim/workload.h"

namespace {

slicesim::RunConfig build_config(const std::string& config_path,
                                 const std::vector<std::string>& overrides) {
  slicesim::RunConfig cfg = config_path.empty()
                                ? slicesim::default_run_config()
                                : slicesim::load_config(config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw slicesim::Error("--set expects key=value, got '" + kv + "'");
    }
    slicesim::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int cmd_fit(const std::string& profile_path, const std::string& out_path,
            int n_cap, int l_cap) {
  const auto samples = slicesim::load_profile_csv(profile_path);
  const slicesim::LatencyModel model = slicesim::fit(samples, n_cap, l_cap);
  slicesim::save_latency_model(model, out_path);
  std::cout << "fit ok: rmse_prefill=" << model.rmse_prefill
            << " rmse_decode=" << model.rmse_decode << " -> " << out_path
            << "\n";
  return 0;
}

int cmd_run(const slicesim::RunConfig& cfg) {
  const slicesim::RunResult result = slicesim::run_experiment(cfg);
  if (!cfg.event_log_path.empty()) {
    result.log.save_jsonl(cfg.event_log_path);
  }
  const std::string report = slicesim::to_json(result.report);
  if (cfg.report_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(cfg.report_path, std::ios::binary);
    if (!out) {
      throw slicesim::Error("cannot open report path for writing: " +
                            cfg.report_path);
    }
    out << report;
  }
  return 0;
}

int cmd_sweep(const slicesim::RunConfig& cfg, const std::string& param,
              const std::vector<double>& values, const std::string& out_path) {
  const auto rows = slicesim::sweep(cfg, param, values);
  if (out_path.empty()) {
    slicesim::write_sweep_csv(std::cout, param, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw slicesim::Error("cannot open sweep output for writing: " +
                            out_path);
    }
    slicesim::write_sweep_csv(out, param, rows);
  }
  return 0;
}

int cmd_gen_workload(const slicesim::RunConfig& cfg,
                     const std::string& out_path) {
  const auto requests = slicesim::generate(cfg.workload);
  slicesim::save_trace(requests, out_path);
  std::cout << "wrote " << requests.size() << " requests to " << out_path
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scheduler simulator for multi-instance LLM serving"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* fit = app.add_subcommand("fit", "fit a latency model from a profile CSV");
  std::string profile_path, fit_out;
  int n_cap = 64, l_cap = 4096;
  fit->add_option("--profile", profile_path, "profile CSV path")->required();
  fit->add_option("--out", fit_out, "output model JSON path")->required();
  fit->add_option("--n-cap", n_cap, "largest batch size the model is valid for");
  fit->add_option("--l-cap", l_cap, "largest length the model is valid for");

  auto* run = app.add_subcommand("run", "run one simulation");
  run->add_option("--config", config_path, "config file path");
  run->add_option("--set", overrides, "override, key=value (repeatable)");
  std::string run_report, run_event_log, run_policy;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  run->add_option("--report", run_report, "report JSON path (default stdout)");
  run->add_option("--event-log", run_event_log, "event log JSONL path");
  run->add_option("--policy", run_policy, "scls, sls, or ils");
  run->add_option("--seed", run_seed, "workload seed")
      ->each([&](const std::string&) { run_seed_set = true; });

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter");
  sweep_cmd->add_option("--config", config_path, "config file path");
  sweep_cmd->add_option("--set", overrides, "override, key=value (repeatable)");
  std::string sweep_param, sweep_out;
  std::vector<double> sweep_values;
  sweep_cmd->add_option("--param", sweep_param, "rate, slice_len, or workers")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "values to sweep")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep_out, "output CSV path (default stdout)");

  auto* gen = app.add_subcommand("gen-workload", "write a synthetic trace CSV");
  gen->add_option("--config", config_path, "config file path");
  gen->add_option("--set", overrides, "override, key=value (repeatable)");
  std::string gen_out;
  gen->add_option("--out", gen_out, "output trace CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      return cmd_fit(profile_path, fit_out, n_cap, l_cap);
    }
    slicesim::RunConfig cfg = build_config(config_path, overrides);
    if (run->parsed()) {
      if (!run_policy.empty()) {
        slicesim::apply_override(cfg, "policy.kind", run_policy);
      }
      if (run_seed_set) cfg.workload.seed = run_seed;
      if (!run_report.empty()) cfg.report_path = run_report;
      if (!run_event_log.empty()) cfg.event_log_path = run_event_log;
      return cmd_run(cfg);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(cfg, sweep_param, sweep_values, sweep_out);
    }
    if (gen->parsed()) {
      return cmd_gen_workload(cfg, gen_out);
    }
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const slicesim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
