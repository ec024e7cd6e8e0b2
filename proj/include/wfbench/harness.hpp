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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfbench/backend.hpp"
#include "wfbench/oracles.hpp"
#include "wfbench/prompts.hpp"
#include "wfbench/scoring.hpp"
#include "wfbench/validate.hpp"

namespace wfbench {

/// An agent is either an oracle name or a directory of external traces laid
/// out as `<dir>/<style>_seed<seed>_sample<sample>.jsonl`.
struct AgentSpec {
  std::string name;
  std::optional<OracleKind> oracle;
  std::string trace_dir;
};

AgentSpec parse_agent(const std::string& text);
std::string external_trace_path(const std::string& dir, Style style, std::uint64_t seed,
                                int sample);

struct RunConfig {
  ProblemId problem = ProblemId::kBeams2d;
  std::vector<Style> styles = all_styles();
  std::vector<std::string> agents = {"perfect"};
  std::vector<std::uint64_t> seeds = {42, 43, 44};
  int samples = 5;
  ScoringConfig scoring;
  OracleOptions oracle;
  std::string out_dir = "wfbench_out";
  int threads = 0;  // 0 = hardware concurrency
  bool write_traces = false;

  void validate() const;
};

Json to_json(const RunConfig& c);
/// Missing keys keep their defaults.
RunConfig run_config_from_json(const Json& j);

struct RunRecord {
  Style style = Style::kFull;
  std::string agent;
  std::uint64_t seed = 0;
  int sample = 0;
  ValidationReport validation;
  ScoreReport score;
  std::set<std::string> tags;
  std::optional<Trace> trace;  // kept only when traces are written
};

Json to_json(const RunRecord& r);
/// Restores the fields aggregation needs (scores, call counts).
RunRecord run_record_from_json(const Json& j);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // population
};

struct AggregateRow {
  Style style = Style::kFull;
  std::string agent;
  int n = 0;
  std::map<std::string, Stat> metrics;
  std::map<std::string, double> mean_calls;  // per tool
  double mean_total_calls = 0.0;
};

struct AggregateTable {
  std::vector<AggregateRow> rows;
  const AggregateRow* find(Style style, const std::string& agent) const;
};

/// Metric keys in report column order (IoU ... CO).
const std::vector<std::string>& metric_columns();
double metric_value(const RunRecord& r, const std::string& column);

struct MatrixResult {
  std::vector<RunRecord> runs;  // ordered by (style, agent, seed, sample)
  AggregateTable table;
};

/// Evaluates a single run: validate, score, classify.
RunRecord evaluate_run(const PromptInstance& instance, const std::string& agent,
                       const Trace& trace, const ProblemBackend& backend,
                       const ScoringConfig& scoring);

/// Oracle/style pairs that do not apply are skipped.
MatrixResult run_matrix(const RunConfig& config,
                        const ProblemBackend& backend = SyntheticBackend{});

/// Rows keyed by (style, agent) in first-appearance order.
AggregateTable aggregate(const std::vector<RunRecord>& runs);

/// summary.csv, summary.md, heatmap.json, tool_counts.json, metadata.json,
/// runs.jsonl and, when traces are present, traces/.
void emit_reports(const MatrixResult& result, const RunConfig& config,
                  const std::string& out_dir);

std::string table_to_csv(const AggregateTable& table);
std::string table_to_markdown(const AggregateTable& table);
Json heatmap_json(const AggregateTable& table);
Json tool_count_json(const AggregateTable& table);

/// Single-run scoring of an instance file and a trace file.
Json score_trace_files(const std::string& instance_path, const std::string& trace_path,
                       const ScoringConfig& scoring = {},
                       const ProblemBackend& backend = SyntheticBackend{});

}  // namespace wfbench
