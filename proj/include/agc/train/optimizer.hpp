// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "agc/model/params.hpp"

namespace agc::train {

enum class OptimizerKind { Adam, Sgd };

std::string to_string(OptimizerKind k);
/// "adam" or "sgd"; throws ValidationError otherwise.
OptimizerKind parse_optimizer(const std::string& text);

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// Applies one update with the (already averaged) batch gradient.
  virtual void step(model::ModelParams& p, const model::Gradients& g) = 0;
};

/// p -= lr * g
class Sgd final : public Optimizer {
 public:
  explicit Sgd(double lr) : lr_(lr) {}
  void step(model::ModelParams& p, const model::Gradients& g) override;

 private:
  double lr_;
};

/// Bias-corrected Adam.
class Adam final : public Optimizer {
 public:
  Adam(const model::ModelParams& shape, double lr, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-8);
  void step(model::ModelParams& p, const model::Gradients& g) override;

 private:
  double lr_, beta1_, beta2_, eps_;
  std::size_t t_ = 0;
  model::Gradients m_, v_;
};

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, double lr, const model::ModelParams& shape);

}  // namespace agc::train
