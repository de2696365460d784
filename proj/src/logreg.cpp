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

#include "curricula/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curricula {
namespace {

double softplus(double a) { return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a))); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Objective and (optionally) its gradient in one pass.
double evaluate(const DenseRows& x, std::span<const int> y, double l2, std::span<const double> w,
                double b, std::vector<double>* grad) {
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  double loss = 0.0;
  if (grad != nullptr) grad->assign(x.cols + 1, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto xi = x.row(i);
    const double z = dot(xi, w) + b;
    loss += y[i] == 1 ? softplus(-z) : softplus(z);
    if (grad != nullptr) {
      const double r = sigmoid(z) - static_cast<double>(y[i]);
      for (std::size_t k = 0; k < x.cols; ++k) (*grad)[k] += r * xi[k];
      (*grad)[x.cols] += r;
    }
  }
  loss *= inv_n;
  double wsq = 0.0;
  for (const double v : w) wsq += v * v;
  loss += 0.5 * l2 * wsq;
  if (grad != nullptr) {
    for (std::size_t k = 0; k < x.cols; ++k) (*grad)[k] = (*grad)[k] * inv_n + l2 * w[k];
    (*grad)[x.cols] *= inv_n;
  }
  return loss;
}

void check_inputs(const DenseRows& x, std::span<const int> y, double l2) {
  if (x.rows != y.size()) throw std::invalid_argument("logistic regression: label count mismatch");
  if (!(l2 >= 0.0)) throw std::invalid_argument("logistic regression: l2 must be >= 0");
  bool pos = false, neg = false;
  for (const int v : y) {
    if (v == 1) {
      pos = true;
    } else if (v == 0) {
      neg = true;
    } else {
      throw std::invalid_argument("logistic regression: labels must be 0 or 1");
    }
  }
  if (!pos || !neg) throw std::invalid_argument("logistic regression needs examples of both classes");
}

}  // namespace

void DenseRows::push_row(std::span<const double> r) {
  if (rows == 0 && cols == 0) cols = r.size();
  if (r.size() != cols) throw std::invalid_argument("row width mismatch");
  values.insert(values.end(), r.begin(), r.end());
  ++rows;
}

double LogRegModel::decision(std::span<const double> x) const { return dot(x, weights) + bias; }

double LogRegModel::probability(std::span<const double> x) const { return sigmoid(decision(x)); }

double LogRegModel::accuracy(const DenseRows& x, std::span<const int> y) const {
  if (x.rows == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.rows; ++i) correct += predict(x.row(i)) == y[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(x.rows);
}

double logreg_objective(const DenseRows& x, std::span<const int> y, double l2,
                        std::span<const double> weights, double bias) {
  return evaluate(x, y, l2, weights, bias, nullptr);
}

std::vector<double> logreg_gradient(const DenseRows& x, std::span<const int> y, double l2,
                                    std::span<const double> weights, double bias) {
  std::vector<double> g;
  evaluate(x, y, l2, weights, bias, &g);
  return g;
}

LogRegModel train_logreg(const DenseRows& x, std::span<const int> y, double l2,
                         const LogRegOptions& options) {
  check_inputs(x, y, l2);
  LogRegModel model;
  model.l2 = l2;
  model.weights.assign(x.cols, 0.0);

  // Diagonal preconditioner from per-block curvature bounds: the weights see
  // max ||x_i||^2 / 4 + l2, the unregularized bias 1/4. A single step for
  // both stalls the bias when l2 is large.
  double max_sq = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto xi = x.row(i);
    max_sq = std::max(max_sq, dot(xi, xi));
  }
  const double scale_w = 1.0 / (0.25 * max_sq + l2 + 1e-12);
  const double scale_b = 4.0;
  double step = 1.0;

  std::vector<double> grad;
  double loss = evaluate(x, y, l2, model.weights, model.bias, &grad);
  std::vector<double> trial_w(x.cols);
  std::vector<double> trial_grad;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double gnorm = std::sqrt(dot(grad, grad));
    model.gradient_norm = gnorm;
    if (gnorm < options.gradient_tolerance) break;
    bool accepted = false;
    while (step > 1e-300) {
      for (std::size_t k = 0; k < x.cols; ++k) trial_w[k] = model.weights[k] - step * scale_w * grad[k];
      const double trial_b = model.bias - step * scale_b * grad[x.cols];
      const double trial_loss = evaluate(x, y, l2, trial_w, trial_b, &trial_grad);
      if (trial_loss <= loss) {
        model.weights.swap(trial_w);
        model.bias = trial_b;
        grad.swap(trial_grad);
        loss = trial_loss;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    // Let the step recover after backtracking.
    step *= 1.25;
  }
  model.iterations = it;
  model.gradient_norm = std::sqrt(dot(grad, grad));
  return model;
}

}  // namespace curricula
