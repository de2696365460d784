// Copyright 2026 The Curricula Authors
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

// Binary ℓ2-regularized logistic regression, shared by the sentence classifier
// and imageability propagation.

#ifndef CURRICULA_LOGREG_HPP_
#define CURRICULA_LOGREG_HPP_

#include <span>
#include <vector>

namespace curricula {

/// Row-major design matrix.
struct DenseRows {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DenseRows() = default;
  DenseRows(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
  void push_row(std::span<const double> r);
};

struct LogRegOptions {
  double gradient_tolerance = 1e-6;
  int max_iterations = 10000;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double l2 = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;

  double decision(std::span<const double> x) const;
  double probability(std::span<const double> x) const;
  int predict(std::span<const double> x) const { return decision(x) > 0.0 ? 1 : 0; }
  double accuracy(const DenseRows& x, std::span<const int> y) const;
};

/// Objective: mean log-loss + l2 * ||w||^2 / 2 (bias unregularized).
double logreg_objective(const DenseRows& x, std::span<const int> y, double l2,
                        std::span<const double> weights, double bias);

/// Gradient of logreg_objective; returns (dJ/dw, dJ/db) packed with the bias last.
std::vector<double> logreg_gradient(const DenseRows& x, std::span<const int> y, double l2,
                                    std::span<const double> weights, double bias);

/// Full-batch gradient descent from zero. Throws std::invalid_argument unless
/// both classes are present.
LogRegModel train_logreg(const DenseRows& x, std::span<const int> y, double l2,
                         const LogRegOptions& options = {});

}  // namespace curricula

#endif  // CURRICULA_LOGREG_HPP_
