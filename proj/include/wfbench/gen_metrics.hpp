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

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wfbench/types.hpp"

namespace wfbench {

/// One flattened design per row.
template <typename Scalar>
using DesignSet = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DesignSetd = DesignSet<double>;

inline constexpr double kDefaultKernelSigma = 10.0;
inline constexpr double kDppRegularization = 1e-6;
inline constexpr double kEqualityTolerance = 1e-9;

/// exp(-|a - b|^2 / (2 sigma^2))
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar gaussian_kernel(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b,
                                          typename DerivedA::Scalar sigma) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) throw Error("kernel arguments differ in dimension");
  if (!(sigma > Scalar(0))) throw Error("kernel bandwidth must be > 0");
  const Scalar d2 = (a - b).squaredNorm();
  return std::exp(-d2 / (Scalar(2) * sigma * sigma));
}

/// Kernel matrix K(i, j) = k(x_i, y_j).
template <typename DerivedX, typename DerivedY>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic> kernel_matrix(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
    typename DerivedX::Scalar sigma) {
  using Scalar = typename DerivedX::Scalar;
  if (x.cols() != y.cols()) throw Error("design sets differ in dimension");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(x.rows(), y.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.rows(); ++j) {
      k(i, j) = gaussian_kernel(x.row(i), y.row(j), sigma);
    }
  }
  return k;
}

namespace detail {
// Row-major sequential sum; keeps results independent of vectorization.
template <typename Derived>
typename Derived::Scalar ordered_mean(const Eigen::MatrixBase<Derived>& m) {
  typename Derived::Scalar sum(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) sum += m(i, j);
  }
  return sum / static_cast<typename Derived::Scalar>(m.size());
}
}  // namespace detail

/// Biased (V-statistic) squared MMD; every pair including self-pairs, so
/// identical sets give exactly zero.
template <typename DerivedD, typename DerivedG>
typename DerivedD::Scalar mmd2(const Eigen::MatrixBase<DerivedD>& dataset,
                               const Eigen::MatrixBase<DerivedG>& generated,
                               typename DerivedD::Scalar sigma = kDefaultKernelSigma) {
  if (dataset.rows() == 0 || generated.rows() == 0) {
    throw Error("MMD needs non-empty design sets");
  }
  if (dataset.cols() != generated.cols()) throw Error("design sets differ in dimension");
  const auto kdd = detail::ordered_mean(kernel_matrix(dataset, dataset, sigma));
  const auto kgg = detail::ordered_mean(kernel_matrix(generated, generated, sigma));
  const auto kdg = detail::ordered_mean(kernel_matrix(dataset, generated, sigma));
  return kdd + kgg - typename DerivedD::Scalar(2) * kdg;
}

/// det(K + 1e-6 I) over the generated set.
template <typename Derived>
typename Derived::Scalar dpp_diversity(const Eigen::MatrixBase<Derived>& generated,
                                       typename Derived::Scalar sigma = kDefaultKernelSigma) {
  using Scalar = typename Derived::Scalar;
  if (generated.rows() == 0) throw Error("DPP needs a non-empty design set");
  auto k = kernel_matrix(generated, generated, sigma);
  k.diagonal().array() += Scalar(kDppRegularization);
  return k.partialPivLu().determinant();
}

enum class Sense { kMinimize, kMaximize };

struct OptimizationPath {
  std::vector<double> values;  // objective at t = 0..T
  double f_star = 0.0;
  Sense sense = Sense::kMinimize;

  void validate() const;
  /// Gap at step t, oriented so 0 is optimal.
  double gap(std::size_t t) const;
};

double cog(const OptimizationPath& path);
double iog(const OptimizationPath& path);
double fog(const OptimizationPath& path);

/// Constraints over (design, attributes); conditions are captured by the
/// callables. Inequalities are violated when > 0, equalities when
/// |h| > 1e-9.
struct ConstraintEvaluator {
  using Fn = std::function<double(const Eigen::Ref<const Eigen::VectorXd>& design,
                                  const Eigen::Ref<const Eigen::VectorXd>& attributes)>;
  std::vector<Fn> inequality;
  std::vector<Fn> equality;
  /// Attributes of a design; empty vector when unset.
  std::function<Eigen::VectorXd(const Eigen::Ref<const Eigen::VectorXd>&)> attributes;

  bool violates(const Eigen::Ref<const Eigen::VectorXd>& design) const;
};

/// Fraction of designs violating at least one constraint.
double rvc(const DesignSetd& generated, const ConstraintEvaluator& evaluator);

// Loaders: stacked DesignGrid JSON array, or CSV with one design per row.
DesignSetd design_set_from_json(const Json& j);
DesignSetd design_set_from_csv(std::string_view text);
DesignSetd load_design_set(const std::string& path);

Json to_json(const OptimizationPath& path);
OptimizationPath optimization_path_from_json(const Json& j);

}  // namespace wfbench
