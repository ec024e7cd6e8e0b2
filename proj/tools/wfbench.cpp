// Copyright 2026 The wfbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "wfbench/gen_metrics.hpp"
#include "wfbench/harness.hpp"
#include "wfbench/oracles.hpp"
#include "wfbench/prompts.hpp"
#include "wfbench/scoring.hpp"

namespace {

using namespace wfbench;

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

ScoringConfig load_scoring(const std::string& config_path) {
  if (config_path.empty()) return {};
  const Json j = load_json(config_path);
  return scoring_config_from_json(j.contains("scoring") ? j.at("scoring") : j);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  return out;
}

// Accepts either one JSON object or an array of them.
template <typename F>
Json map_records(const Json& j, F&& f) {
  if (!j.is_array()) return f(j);
  Json out = Json::array();
  for (const auto& item : j) out.push_back(f(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wfbench: workflow benchmark harness and scoring engine"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the style x agent x seed x sample matrix");
  std::string config_path, out_dir, styles, agents, seeds, problem;
  int samples = -1, threads = -1;
  bool traces = false;
  run->add_option("--config", config_path, "JSON file mirroring RunConfig");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--styles", styles, "Comma-separated styles");
  run->add_option("--agents", agents, "Comma-separated oracle names or trace directories");
  run->add_option("--seeds", seeds, "Comma-separated seeds");
  run->add_option("--samples", samples, "Dataset samples per seed");
  run->add_option("--problem", problem, "beams2d or photonics2d");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_flag("--traces", traces, "Also write every trace");

  // score-trace
  auto* score = app.add_subcommand("score-trace", "Validate and score one trace");
  std::string instance_path, trace_path, score_config;
  score->add_option("--instance", instance_path, "PromptInstance JSON")->required();
  score->add_option("--trace", trace_path, "Trace JSONL")->required();
  score->add_option("--config", score_config, "Scoring weights JSON");

  // rag-score
  auto* rag = app.add_subcommand("rag-score", "Score retrieval outcomes");
  std::string rag_input, rag_config;
  rag->add_option("input", rag_input, "RagOutcome JSON (object or array)")->required();
  rag->add_option("--config", rag_config, "Scoring weights JSON");

  // hpc-score
  auto* hpc = app.add_subcommand("hpc-score", "Score HPC run records");
  std::string hpc_input, hpc_config;
  hpc->add_option("input", hpc_input, "HpcRunRecord JSON (object or array)")->required();
  hpc->add_option("--config", hpc_config, "Scoring weights JSON");

  // gen-metrics
  auto* gen = app.add_subcommand("gen-metrics", "MMD, DPP and optimality gaps");
  std::string dataset_path, generated_path, path_file;
  double sigma = kDefaultKernelSigma;
  gen->add_option("--dataset", dataset_path, "Reference design set (JSON or CSV)");
  gen->add_option("--generated", generated_path, "Generated design set (JSON or CSV)");
  gen->add_option("--sigma", sigma, "Gaussian kernel bandwidth");
  gen->add_option("--path", path_file, "Optimization path JSON {values, f_star, sense}");

  // report
  auto* report = app.add_subcommand("report", "Rebuild tables from runs.jsonl");
  std::string runs_path, report_out;
  report->add_option("runs", runs_path, "runs.jsonl from a previous run")->required();
  report->add_option("--out", report_out, "Output directory (default: print Markdown)");

  // instance
  auto* inst = app.add_subcommand("instance", "Generate one prompt instance");
  std::string inst_style = "Full", inst_problem = "beams2d";
  std::uint64_t inst_seed = 42;
  int inst_sample = 0;
  bool text_only = false;
  inst->add_option("--style", inst_style, "Workflow style");
  inst->add_option("--problem", inst_problem, "beams2d or photonics2d");
  inst->add_option("--seed", inst_seed, "Seed");
  inst->add_option("--sample", inst_sample, "Dataset sample");
  inst->add_flag("--text", text_only, "Print only the prompt text");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Write the trace of an oracle agent");
  std::string orc_kind, orc_instance, orc_out;
  int orc_n = 1;
  orc->add_option("--kind", orc_kind, "Oracle name")->required();
  orc->add_option("--instance", orc_instance, "PromptInstance JSON")->required();
  orc->add_option("--out", orc_out, "Trace JSONL path")->required();
  orc->add_option("--redundant", orc_n, "Redundant simulations for over_caller");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      RunConfig cfg;
      if (!config_path.empty()) cfg = run_config_from_json(load_json(config_path));
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (!styles.empty()) {
        cfg.styles.clear();
        for (const auto& s : split(styles)) cfg.styles.push_back(parse_style(s));
      }
      if (!agents.empty()) cfg.agents = split(agents);
      if (!seeds.empty()) {
        cfg.seeds.clear();
        for (const auto& s : split(seeds)) cfg.seeds.push_back(std::stoull(s));
      }
      if (samples >= 0) cfg.samples = samples;
      if (!problem.empty()) cfg.problem = parse_problem(problem);
      if (threads >= 0) cfg.threads = threads;
      if (traces) cfg.write_traces = true;
      const MatrixResult result = run_matrix(cfg);
      emit_reports(result, cfg, cfg.out_dir);
      std::cout << table_to_markdown(result.table);
      std::cout << result.runs.size() << " runs written to " << cfg.out_dir << "\n";
    } else if (*score) {
      std::cout << score_trace_files(instance_path, trace_path, load_scoring(score_config))
                       .dump(2)
                << "\n";
    } else if (*rag) {
      const ScoringConfig cfg = load_scoring(rag_config);
      const Json out = map_records(load_json(rag_input), [&](const Json& j) {
        const RagOutcome o = rag_outcome_from_json(j);
        return Json{{"prompt_id", std::string(rag_prompt_name(o.prompt_id))},
                    {"score", rag_score(o, cfg)}};
      });
      std::cout << out.dump(2) << "\n";
    } else if (*hpc) {
      const ScoringConfig cfg = load_scoring(hpc_config);
      const Json out = map_records(load_json(hpc_input), [&](const Json& j) {
        const HpcRunRecord r = hpc_record_from_json(j);
        const HpcWeights w = effective_hpc_weights(r, cfg.hpc);
        return Json{{"score", hpc_score(r, cfg)},
                    {"weights", Json{{"step", w.step}, {"config", w.config}, {"eval", w.eval}}}};
      });
      std::cout << out.dump(2) << "\n";
    } else if (*gen) {
      Json out = Json::object();
      if (!generated_path.empty()) {
        const DesignSetd generated = load_design_set(generated_path);
        if (!dataset_path.empty()) {
          out["mmd2"] = mmd2(load_design_set(dataset_path), generated, sigma);
        }
        out["dpp_diversity"] = dpp_diversity(generated, sigma);
      }
      if (!path_file.empty()) {
        const OptimizationPath p = optimization_path_from_json(load_json(path_file));
        out["cog"] = cog(p);
        out["iog"] = iog(p);
        out["fog"] = fog(p);
      }
      if (out.empty()) throw Error("gen-metrics needs --generated and/or --path");
      std::cout << out.dump(2) << "\n";
    } else if (*report) {
      std::vector<RunRecord> runs;
      const std::string text = read_file(runs_path);
      std::size_t start = 0;
      int line_no = 0;
      while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        ++line_no;
        const std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          runs.push_back(run_record_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
          throw Error("runs line " + std::to_string(line_no) + ": " + e.what());
        }
      }
      const AggregateTable table = aggregate(runs);
      if (report_out.empty()) {
        std::cout << table_to_markdown(table);
      } else {
        MatrixResult result{runs, table};
        RunConfig cfg;
        cfg.out_dir = report_out;
        emit_reports(result, cfg, report_out);
        std::cout << table.rows.size() << " rows written to " << report_out << "\n";
      }
    } else if (*inst) {
      const PromptInstance in =
          sample_instance(parse_style(inst_style), parse_problem(inst_problem), inst_seed,
                          inst_sample);
      if (text_only) {
        std::cout << in.prompt_text << "\n";
      } else {
        std::cout << to_json(in).dump(2) << "\n";
      }
    } else if (*orc) {
      const PromptInstance in = prompt_instance_from_json(load_json(orc_instance));
      OracleOptions opts;
      opts.redundant_simulations = orc_n;
      save_trace(run_oracle(parse_oracle(orc_kind), in, SyntheticBackend{}, opts), orc_out);
      std::cout << "trace written to " << orc_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
