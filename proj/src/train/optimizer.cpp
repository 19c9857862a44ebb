// SPDX-License-Identifier: Apache-2.0
#include "agc/train/optimizer.hpp"

#include <cmath>

#include "agc/errors.hpp"

namespace agc::train {

std::string to_string(OptimizerKind k) { return k == OptimizerKind::Adam ? "adam" : "sgd"; }

OptimizerKind parse_optimizer(const std::string& text) {
  if (text == "adam") return OptimizerKind::Adam;
  if (text == "sgd") return OptimizerKind::Sgd;
  throw ValidationError("unknown optimizer '" + text + "' (expected adam or sgd)");
}

void Sgd::step(model::ModelParams& p, const model::Gradients& g) {
  const auto ts = p.tensors();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto w = ts[k]->values();
    const auto d = g.parts[k].values();
    for (std::size_t e = 0; e < w.size(); ++e) w[e] -= lr_ * d[e];
  }
}

Adam::Adam(const model::ModelParams& shape, double lr, double beta1, double beta2, double eps)
    : lr_(lr),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      m_(model::Gradients::zeros_like(shape)),
      v_(model::Gradients::zeros_like(shape)) {}

void Adam::step(model::ModelParams& p, const model::Gradients& g) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const auto ts = p.tensors();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto w = ts[k]->values();
    const auto d = g.parts[k].values();
    auto m = m_.parts[k].values();
    auto v = v_.parts[k].values();
    for (std::size_t e = 0; e < w.size(); ++e) {
      m[e] = beta1_ * m[e] + (1.0 - beta1_) * d[e];
      v[e] = beta2_ * v[e] + (1.0 - beta2_) * d[e] * d[e];
      w[e] -= lr_ * (m[e] / c1) / (std::sqrt(v[e] / c2) + eps_);
    }
  }
}

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, double lr, const model::ModelParams& shape) {
  if (kind == OptimizerKind::Sgd) return std::make_unique<Sgd>(lr);
  return std::make_unique<Adam>(shape, lr);
}

}  // namespace agc::train
