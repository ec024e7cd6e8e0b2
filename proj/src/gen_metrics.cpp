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

#include "wfbench/gen_metrics.hpp"

#include <sstream>

namespace wfbench {

void OptimizationPath::validate() const {
  if (values.empty()) throw Error("optimization path is empty");
  if (!std::isfinite(f_star)) throw Error("optimal objective must be finite");
}

double OptimizationPath::gap(std::size_t t) const {
  return sense == Sense::kMinimize ? values.at(t) - f_star : f_star - values.at(t);
}

double cog(const OptimizationPath& path) {
  path.validate();
  double sum = 0.0;
  for (std::size_t t = 0; t < path.values.size(); ++t) sum += path.gap(t);
  return sum;
}

double iog(const OptimizationPath& path) {
  path.validate();
  return path.gap(0);
}

double fog(const OptimizationPath& path) {
  path.validate();
  return path.gap(path.values.size() - 1);
}

bool ConstraintEvaluator::violates(const Eigen::Ref<const Eigen::VectorXd>& design) const {
  const Eigen::VectorXd attrs = attributes ? attributes(design) : Eigen::VectorXd();
  for (const auto& g : inequality) {
    const double v = g(design, attrs);
    if (!std::isfinite(v)) throw Error("inequality constraint returned a non-finite value");
    if (v > 0.0) return true;
  }
  for (const auto& h : equality) {
    const double v = h(design, attrs);
    if (!std::isfinite(v)) throw Error("equality constraint returned a non-finite value");
    if (std::abs(v) > kEqualityTolerance) return true;
  }
  return false;
}

double rvc(const DesignSetd& generated, const ConstraintEvaluator& evaluator) {
  if (generated.rows() == 0) throw Error("RVC needs a non-empty design set");
  Eigen::Index violating = 0;
  for (Eigen::Index k = 0; k < generated.rows(); ++k) {
    const Eigen::VectorXd x = generated.row(k).transpose();
    if (evaluator.violates(x)) ++violating;
  }
  return static_cast<double>(violating) / static_cast<double>(generated.rows());
}

DesignSetd design_set_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("design set must be a non-empty array");
  std::vector<std::vector<double>> rows;
  for (const auto& item : j) {
    if (item.is_array()) {
      rows.push_back(item.get<std::vector<double>>());
    } else {
      rows.push_back(grid_from_json(item).to_vector());
    }
  }
  DesignSetd set(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw Error("designs differ in dimension");
    }
    for (std::size_t k = 0; k < rows[i].size(); ++k) set(i, k) = rows[i][k];
  }
  return set;
}

DesignSetd design_set_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
      } catch (const std::exception&) {
        throw Error("CSV line " + std::to_string(line_no) + ": bad number '" + field + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error("CSV line " + std::to_string(line_no) + ": designs differ in dimension");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("design set CSV is empty");
  DesignSetd set(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) set(i, k) = rows[i][k];
  }
  return set;
}

DesignSetd load_design_set(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return design_set_from_csv(text);
  }
  try {
    return design_set_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error("design set '" + path + "': " + e.what());
  }
}

Json to_json(const OptimizationPath& path) {
  return Json{{"values", path.values},
              {"f_star", path.f_star},
              {"sense", path.sense == Sense::kMinimize ? "minimize" : "maximize"}};
}

OptimizationPath optimization_path_from_json(const Json& j) {
  OptimizationPath p;
  p.values = j.at("values").get<std::vector<double>>();
  p.f_star = j.at("f_star").get<double>();
  const auto sense = j.value("sense", std::string("minimize"));
  if (sense == "minimize") p.sense = Sense::kMinimize;
  else if (sense == "maximize") p.sense = Sense::kMaximize;
  else throw Error("unknown sense '" + sense + "'");
  p.validate();
  return p;
}

}  // namespace wfbench
