// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "agc/graph/road_graph.hpp"
#include "agc/numcore/tensor.hpp"

namespace agc::model {

using numcore::Tensor;

/// Gate weights act on [h_prev; x], so each matrix is hidden x (hidden + input).
struct GruWeights {
  Tensor w_z, w_r, w_c;
  Tensor b_z, b_r, b_c;

  std::size_t hidden() const { return b_z.size(); }
  std::size_t input() const { return w_z.cols() - b_z.size(); }
};

inline constexpr std::size_t kEncoderInput = 3;  // fused speed, N, p
inline constexpr std::size_t kDecoderInput = 6;  // N, avg, median, max, min, std

/// Every trainable tensor of the network plus the hop mask that fixes the
/// sparsity of the graph-convolution weights. GRU, attention and output
/// weights are shared across links; only rows of w_gc are link specific.
struct ModelParams {
  Tensor w_gc;  // |L| x |L|, zero wherever mask is 0
  graph::HopMask mask;
  GruWeights encoder;
  GruWeights decoder;
  Tensor w_f;  // H x 2H attention score projection over [h_dec; h_enc]
  Tensor q;    // H
  Tensor w_h;  // H x 2H over [S; h_dec]
  Tensor w_v;  // 1 x H
  Tensor b_v;  // 1

  std::size_t hidden() const { return q.size(); }
  std::size_t link_count() const { return w_gc.rows(); }

  /// Fixed order used by optimizers, gradient buffers and checkpoints.
  std::vector<Tensor*> tensors();
  std::vector<const Tensor*> tensors() const;
  static const std::vector<std::string>& tensor_names();

  /// Zero w_gc wherever the mask is 0.
  void enforce_mask();
  bool mask_respected() const;
  bool all_finite() const;

  friend bool operator==(const ModelParams&, const ModelParams&);
};

/// Masked w_gc entries of row i start at 1 / |row i of mask|; matrices are
/// uniform in +/- 1/sqrt(fan_in); biases zero.
ModelParams init_params(const graph::HopMask& mask, std::size_t hidden, std::uint64_t seed);

/// All weights and biases zero (w_gc zero too).
ModelParams zero_params(const graph::HopMask& mask, std::size_t hidden);

/// Gradient buffers shaped like the params, in tensors() order.
struct Gradients {
  std::vector<Tensor> parts;

  static Gradients zeros_like(const ModelParams& p);
  void zero();
  /// this += scale * other
  void add_scaled(const Gradients& other, double scale);
  double norm() const;
  void scale(double s);
};

}  // namespace agc::model
