// SPDX-License-Identifier: Apache-2.0
#include "agc/model/params.hpp"

#include <cmath>
#include <random>

#include "agc/errors.hpp"
#include "agc/numcore/kernels.hpp"

namespace agc::model {

std::vector<Tensor*> ModelParams::tensors() {
  return {&w_gc,      &encoder.w_z, &encoder.w_r, &encoder.w_c, &encoder.b_z, &encoder.b_r,
          &encoder.b_c, &decoder.w_z, &decoder.w_r, &decoder.w_c, &decoder.b_z, &decoder.b_r,
          &decoder.b_c, &w_f,         &q,           &w_h,         &w_v,         &b_v};
}

std::vector<const Tensor*> ModelParams::tensors() const {
  auto mut = const_cast<ModelParams*>(this)->tensors();
  return {mut.begin(), mut.end()};
}

const std::vector<std::string>& ModelParams::tensor_names() {
  static const std::vector<std::string> names{
      "w_gc",      "enc.w_z", "enc.w_r", "enc.w_c", "enc.b_z", "enc.b_r",
      "enc.b_c",   "dec.w_z", "dec.w_r", "dec.w_c", "dec.b_z", "dec.b_r",
      "dec.b_c",   "w_f",     "q",       "w_h",     "w_v",     "b_v"};
  return names;
}

void ModelParams::enforce_mask() {
  const std::size_t n = link_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!mask(i, j)) w_gc.at(i, j) = 0.0;
    }
  }
}

bool ModelParams::mask_respected() const {
  const std::size_t n = link_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!mask(i, j) && w_gc.at(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool ModelParams::all_finite() const {
  for (const Tensor* t : tensors()) {
    if (!t->all_finite()) return false;
  }
  return true;
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  if (!(a.mask == b.mask)) return false;
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!(*ta[i] == *tb[i])) return false;
  }
  return true;
}

namespace {

GruWeights zero_gru(std::size_t input, std::size_t hidden) {
  GruWeights g;
  g.w_z = g.w_r = g.w_c = Tensor::matrix(hidden, hidden + input);
  g.b_z = g.b_r = g.b_c = Tensor::vector(hidden);
  return g;
}

}  // namespace

ModelParams zero_params(const graph::HopMask& mask, std::size_t hidden) {
  if (hidden == 0) throw ValidationError("hidden size must be positive");
  const std::size_t n = mask.link_count();
  ModelParams p;
  p.mask = mask;
  p.w_gc = Tensor::matrix(n, n);
  p.encoder = zero_gru(kEncoderInput, hidden);
  p.decoder = zero_gru(kDecoderInput, hidden);
  p.w_f = Tensor::matrix(hidden, 2 * hidden);
  p.q = Tensor::vector(hidden);
  p.w_h = Tensor::matrix(hidden, 2 * hidden);
  p.w_v = Tensor::matrix(1, hidden);
  p.b_v = Tensor::vector(1);
  return p;
}

ModelParams init_params(const graph::HopMask& mask, std::size_t hidden, std::uint64_t seed) {
  ModelParams p = zero_params(mask, hidden);
  std::mt19937_64 rng(seed);
  auto fill_uniform = [&rng](Tensor& t, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : t.values()) v = dist(rng);
  };
  for (std::size_t i = 0; i < p.link_count(); ++i) {
    const auto& nbrs = mask.neighbors(i);
    for (std::size_t j : nbrs) p.w_gc.at(i, j) = 1.0 / static_cast<double>(nbrs.size());
  }
  for (GruWeights* g : {&p.encoder, &p.decoder}) {
    fill_uniform(g->w_z, g->w_z.cols());
    fill_uniform(g->w_r, g->w_r.cols());
    fill_uniform(g->w_c, g->w_c.cols());
  }
  fill_uniform(p.w_f, p.w_f.cols());
  fill_uniform(p.q, hidden);
  fill_uniform(p.w_h, p.w_h.cols());
  fill_uniform(p.w_v, p.w_v.cols());
  return p;
}

Gradients Gradients::zeros_like(const ModelParams& p) {
  Gradients g;
  for (const Tensor* t : p.tensors()) g.parts.push_back(Tensor::zeros_like(*t));
  return g;
}

void Gradients::zero() {
  for (auto& t : parts) t.fill(0.0);
}

void Gradients::add_scaled(const Gradients& other, double scale) {
  const auto& k = numcore::kernels::active();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    k.axpy(parts[i].size(), scale, other.parts[i].values().data(), parts[i].values().data());
  }
}

double Gradients::norm() const {
  double ss = 0.0;
  for (const auto& t : parts) {
    for (double v : t.values()) ss += v * v;
  }
  return std::sqrt(ss);
}

void Gradients::scale(double s) {
  for (auto& t : parts) {
    for (double& v : t.values()) v *= s;
  }
}

}  // namespace agc::model
