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

#include "wfbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

namespace wfbench {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const std::vector<std::pair<std::string, std::string>>& column_labels() {
  static const std::vector<std::pair<std::string, std::string>> labels{
      {"iou", "IoU"},
      {"pixel_accuracy", "PA"},
      {"objective_score", "Obj"},
      {"constraint_score", "Constr"},
      {"connectivity", "Conn"},
      {"watertight", "WT"},
      {"tool_efficiency", "Tool Eff."},
      {"task_completion", "TC"},
      {"design_quality", "DQ"},
      {"combined_overall", "CO"},
  };
  return labels;
}

ScoreReport score_report_from_json(const Json& j) {
  ScoreReport s;
  s.iou = j.at("iou").get<double>();
  s.pixel_accuracy = j.at("pixel_accuracy").get<double>();
  s.objective_score = j.at("objective_score").get<double>();
  s.constraint_score = j.at("constraint_score").get<double>();
  s.connectivity = j.at("connectivity").get<double>();
  s.watertight = j.at("watertight").get<double>();
  s.tool_efficiency = j.at("tool_efficiency").get<double>();
  s.task_completion = j.at("task_completion").get<int>();
  s.design_quality = j.at("design_quality").get<double>();
  s.combined_overall = j.at("combined_overall").get<double>();
  s.abstained = j.value("abstained", false);
  return s;
}

std::vector<std::string> split_csv_list(const Json& j) {
  if (j.is_string()) {
    std::vector<std::string> out;
    std::string item;
    for (char ch : j.get<std::string>() + ",") {
      if (ch == ',') {
        if (!item.empty()) out.push_back(item);
        item.clear();
      } else if (ch != ' ') {
        item += ch;
      }
    }
    return out;
  }
  return j.get<std::vector<std::string>>();
}

struct Cell {
  Style style;
  AgentSpec agent;
  std::uint64_t seed;
  int sample;
};

}  // namespace

AgentSpec parse_agent(const std::string& text) {
  AgentSpec a;
  a.name = text;
  try {
    a.oracle = parse_oracle(text);
  } catch (const Error&) {
    if (!fs::is_directory(text)) {
      throw Error("unknown oracle '" + text + "' (and no trace directory of that name)");
    }
    a.trace_dir = text;
    return a;
  }
  if (is_hpc_oracle(*a.oracle)) {
    throw Error("oracle '" + text + "' scores HPC runs, not workflow traces");
  }
  return a;
}

std::string external_trace_path(const std::string& dir, Style style, std::uint64_t seed,
                                int sample) {
  return (fs::path(dir) / (std::string(style_name(style)) + "_seed" +
                           std::to_string(seed) + "_sample" + std::to_string(sample) +
                           ".jsonl"))
      .string();
}

void RunConfig::validate() const {
  if (styles.empty()) throw Error("run config needs at least one style");
  if (agents.empty()) throw Error("run config needs at least one agent");
  if (seeds.empty()) throw Error("run config needs at least one seed");
  if (samples <= 0) throw Error("run config needs samples >= 1");
  if (threads < 0) throw Error("thread count must be >= 0");
  scoring.validate();
  for (const auto& a : agents) parse_agent(a);
}

Json to_json(const RunConfig& c) {
  Json styles = Json::array();
  for (Style s : c.styles) styles.push_back(std::string(style_name(s)));
  return Json{{"problem_id", std::string(problem_name(c.problem))},
              {"styles", styles},
              {"agents", c.agents},
              {"seeds", c.seeds},
              {"samples", c.samples},
              {"scoring", to_json(c.scoring)},
              {"redundant_simulations", c.oracle.redundant_simulations},
              {"out_dir", c.out_dir},
              {"threads", c.threads},
              {"write_traces", c.write_traces}};
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error("run config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("problem_id")) c.problem = parse_problem(j.at("problem_id").get<std::string>());
    if (j.contains("styles")) {
      c.styles.clear();
      for (const auto& s : split_csv_list(j.at("styles"))) c.styles.push_back(parse_style(s));
    }
    if (j.contains("agents")) c.agents = split_csv_list(j.at("agents"));
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("scoring")) c.scoring = scoring_config_from_json(j.at("scoring"));
    if (j.contains("redundant_simulations")) {
      c.oracle.redundant_simulations = j.at("redundant_simulations").get<int>();
    }
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("write_traces")) c.write_traces = j.at("write_traces").get<bool>();
  } catch (const Json::exception& e) {
    throw Error(std::string("run config: ") + e.what());
  }
  return c;
}

Json to_json(const RunRecord& r) {
  Json tags = Json::array();
  for (const auto& t : r.tags) tags.push_back(t);
  return Json{{"style", std::string(style_name(r.style))},
              {"agent", r.agent},
              {"seed", r.seed},
              {"sample", r.sample},
              {"score", to_json(r.score)},
              {"validation", to_json(r.validation)},
              {"tags", tags}};
}

RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  r.style = parse_style(j.at("style").get<std::string>());
  r.agent = j.at("agent").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.sample = j.at("sample").get<int>();
  r.score = score_report_from_json(j.at("score"));
  const Json& v = j.at("validation");
  r.validation.style = r.style;
  r.validation.task_completion = r.score.task_completion;
  r.validation.tool_efficiency = r.score.tool_efficiency;
  r.validation.total_calls = v.value("total_calls", 0);
  r.validation.expected_calls = v.value("expected_calls", 0);
  r.validation.matched_calls = v.value("matched_calls", 0);
  r.validation.abstained = r.score.abstained;
  for (Tool t : all_tools()) r.validation.call_counts[std::string(tool_name(t))] = 0;
  if (v.contains("call_counts")) {
    for (const auto& [k, n] : v.at("call_counts").items()) {
      r.validation.call_counts[k] = n.get<int>();
    }
  }
  if (j.contains("tags")) {
    for (const auto& t : j.at("tags")) r.tags.insert(t.get<std::string>());
  }
  return r;
}

const AggregateRow* AggregateTable::find(Style style, const std::string& agent) const {
  for (const auto& row : rows) {
    if (row.style == style && row.agent == agent) return &row;
  }
  return nullptr;
}

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> out;
    for (const auto& [k, label] : column_labels()) out.push_back(k);
    return out;
  }();
  return cols;
}

double metric_value(const RunRecord& r, const std::string& column) {
  const ScoreReport& s = r.score;
  if (column == "iou") return s.iou;
  if (column == "pixel_accuracy") return s.pixel_accuracy;
  if (column == "objective_score") return s.objective_score;
  if (column == "constraint_score") return s.constraint_score;
  if (column == "connectivity") return s.connectivity;
  if (column == "watertight") return s.watertight;
  if (column == "tool_efficiency") return s.tool_efficiency;
  if (column == "task_completion") return s.task_completion;
  if (column == "design_quality") return s.design_quality;
  if (column == "combined_overall") return s.combined_overall;
  throw Error("unknown metric column '" + column + "'");
}

RunRecord evaluate_run(const PromptInstance& instance, const std::string& agent,
                       const Trace& trace, const ProblemBackend& backend,
                       const ScoringConfig& scoring) {
  RunRecord r;
  r.style = instance.style;
  r.agent = agent;
  r.seed = instance.seed;
  r.sample = instance.sample;
  r.validation = validate_trace(instance, trace, backend);
  r.score = score_run(instance, trace, r.validation, backend, scoring);
  r.tags = classify_failure(r.validation);
  return r;
}

MatrixResult run_matrix(const RunConfig& config, const ProblemBackend& backend) {
  config.validate();
  std::vector<AgentSpec> agents;
  for (const auto& a : config.agents) agents.push_back(parse_agent(a));

  std::vector<Cell> cells;
  for (Style style : config.styles) {
    for (const auto& agent : agents) {
      if (agent.oracle && !oracle_applies(*agent.oracle, style)) continue;
      for (std::uint64_t seed : config.seeds) {
        for (int sample = 0; sample < config.samples; ++sample) {
          cells.push_back(Cell{style, agent, seed, sample});
        }
      }
    }
  }

  MatrixResult result;
  result.runs.resize(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& cell = cells[i];
        const PromptInstance instance =
            sample_instance(cell.style, config.problem, cell.seed, cell.sample, backend);
        Trace trace;
        if (cell.agent.oracle) {
          trace = run_oracle(*cell.agent.oracle, instance, backend, config.oracle);
        } else {
          const auto path =
              external_trace_path(cell.agent.trace_dir, cell.style, cell.seed, cell.sample);
          if (!fs::exists(path)) throw Error("missing external trace file " + path);
          trace = load_trace(path);
        }
        RunRecord r = evaluate_run(instance, cell.agent.name, trace, backend, config.scoring);
        if (config.write_traces) r.trace = std::move(trace);
        result.runs[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };

  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(1, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.table = aggregate(result.runs);
  return result;
}

AggregateTable aggregate(const std::vector<RunRecord>& runs) {
  AggregateTable table;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const auto& r : runs) {
    std::size_t g = 0;
    while (g < table.rows.size() &&
           !(table.rows[g].style == r.style && table.rows[g].agent == r.agent)) {
      ++g;
    }
    if (g == table.rows.size()) {
      table.rows.push_back(AggregateRow{r.style, r.agent, 0, {}, {}, 0.0});
      groups.emplace_back();
    }
    groups[g].push_back(&r);
  }
  for (std::size_t g = 0; g < table.rows.size(); ++g) {
    AggregateRow& row = table.rows[g];
    const auto& members = groups[g];
    row.n = static_cast<int>(members.size());
    const double n = static_cast<double>(row.n);
    for (const auto& col : metric_columns()) {
      double sum = 0.0;
      for (const auto* r : members) sum += metric_value(*r, col);
      const double mean = sum / n;
      double sq = 0.0;
      for (const auto* r : members) {
        const double d = metric_value(*r, col) - mean;
        sq += d * d;
      }
      row.metrics[col] = Stat{mean, std::sqrt(sq / n)};
    }
    double total = 0.0;
    for (Tool t : all_tools()) {
      const std::string name(tool_name(t));
      double sum = 0.0;
      for (const auto* r : members) {
        const auto it = r->validation.call_counts.find(name);
        if (it != r->validation.call_counts.end()) sum += it->second;
      }
      row.mean_calls[name] = sum / n;
    }
    for (const auto* r : members) total += r->validation.total_calls;
    row.mean_total_calls = total / n;
  }
  return table;
}

std::string table_to_csv(const AggregateTable& table) {
  std::string out = "style,agent,n";
  for (const auto& col : metric_columns()) out += "," + col + "_mean," + col + "_std";
  out += "\n";
  for (const auto& row : table.rows) {
    out += std::string(style_name(row.style)) + "," + row.agent + "," + std::to_string(row.n);
    for (const auto& col : metric_columns()) {
      const Stat& s = row.metrics.at(col);
      out += "," + fixed(s.mean, 6) + "," + fixed(s.std, 6);
    }
    out += "\n";
  }
  return out;
}

std::string table_to_markdown(const AggregateTable& table) {
  std::string out = "| Style | Agent |";
  std::string rule = "|---|---|";
  for (const auto& [k, label] : column_labels()) {
    out += " " + label + " |";
    rule += "---|";
  }
  out += " n |\n" + rule + "---|\n";
  for (const auto& row : table.rows) {
    out += "| " + std::string(style_name(row.style)) + " | " + row.agent + " |";
    for (const auto& col : metric_columns()) {
      const Stat& s = row.metrics.at(col);
      out += " " + fixed(s.mean, 2) + " ± " + fixed(s.std, 2) + " |";
    }
    out += " " + std::to_string(row.n) + " |\n";
  }
  return out;
}

Json heatmap_json(const AggregateTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json calls = Json::object();
    for (const auto& [tool, mean] : row.mean_calls) calls[tool] = mean;
    rows.push_back(Json{{"style", std::string(style_name(row.style))},
                        {"agent", row.agent},
                        {"n", row.n},
                        {"mean_calls", calls}});
  }
  return Json{{"description", "average number of calls per tool"}, {"rows", rows}};
}

Json tool_count_json(const AggregateTable& table) {
  Json points = Json::array();
  for (const auto& row : table.rows) {
    points.push_back(Json{{"style", std::string(style_name(row.style))},
                          {"agent", row.agent},
                          {"tool_calls", row.mean_total_calls},
                          {"combined_overall", row.metrics.at("combined_overall").mean},
                          {"design_quality", row.metrics.at("design_quality").mean}});
  }
  return Json{{"description", "tool count vs composite and design quality"},
              {"points", points}};
}

void emit_reports(const MatrixResult& result, const RunConfig& config,
                  const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error("cannot create output directory '" + out_dir + "'");
  }
  const fs::path dir(out_dir);
  write_file((dir / "summary.csv").string(), table_to_csv(result.table));
  write_file((dir / "summary.md").string(), table_to_markdown(result.table));
  write_file((dir / "heatmap.json").string(), heatmap_json(result.table).dump(2) + "\n");
  write_file((dir / "tool_counts.json").string(),
             tool_count_json(result.table).dump(2) + "\n");

  // Execution details (thread count, destination) stay out so outputs are
  // byte-identical across machines.
  Json config_json = to_json(config);
  config_json.erase("threads");
  config_json.erase("out_dir");
  Json meta{{"config", config_json},
            {"runs", result.runs.size()},
            {"cells", result.table.rows.size()},
            {"std_estimator", "population (divide by n)"},
            {"binarization_threshold", 0.5}};
  write_file((dir / "metadata.json").string(), meta.dump(2) + "\n");

  std::string lines;
  for (const auto& r : result.runs) lines += to_json(r).dump() + "\n";
  write_file((dir / "runs.jsonl").string(), lines);

  for (const auto& r : result.runs) {
    if (!r.trace) continue;
    const fs::path tdir = dir / "traces" / fs::path(r.agent).filename();
    fs::create_directories(tdir, ec);
    if (ec) throw Error("cannot create trace directory '" + tdir.string() + "'");
    save_trace(*r.trace, external_trace_path(tdir.string(), r.style, r.seed, r.sample));
  }
}

Json score_trace_files(const std::string& instance_path, const std::string& trace_path,
                       const ScoringConfig& scoring, const ProblemBackend& backend) {
  PromptInstance instance;
  try {
    instance = prompt_instance_from_json(Json::parse(read_file(instance_path)));
  } catch (const Json::exception& e) {
    throw Error("instance '" + instance_path + "': " + e.what());
  }
  const Trace trace = load_trace(trace_path);
  const RunRecord r = evaluate_run(instance, "external", trace, backend, scoring);
  Json tags = Json::array();
  for (const auto& t : r.tags) tags.push_back(t);
  return Json{{"validation", to_json(r.validation)},
              {"score", to_json(r.score)},
              {"tags", tags}};
}

}  // namespace wfbench
