// SPDX-License-Identifier: Apache-2.0
#pragma once

// Forward pass of the attention graph-convolutional sequence-to-sequence
// forecaster, built on a differentiation tape.
//
//   encoder input  x_s   = [ (w_gc[i] . mask[i]) . V_s ; N_s ; p_s ]
//   encoder        h_s   = GRU_enc(h_{s-1}, x_s),  h before the window = 0
//   decoder        h_j   = GRU_dec(h_{j-1}, [N; avg; median; max; min; std]_j),
//                  h_0   = last encoder state
//   attention      u_ji  = q . tanh(W_f [h_j ; h_{t-i}]),  a_j = softmax(u_j)
//                  S_j   = sum_i a_ji h_{t-i}
//   output         v_j   = W_v tanh(W_h [S_j ; h_j]) + b_v
//
// Encoder positions are indexed by recency: i = 0 is the anchor step.
// Decoder inputs never include targets or earlier predictions.

#include <cstddef>
#include <span>
#include <vector>

#include "agc/features/normalizer.hpp"
#include "agc/features/samples.hpp"
#include "agc/model/params.hpp"
#include "agc/numcore/autodiff.hpp"

namespace agc::model {

using numcore::Tape;
using numcore::Var;

struct GruVars {
  Var w_z, w_r, w_c, b_z, b_r, b_c;
};

struct ParamVars {
  Var w_gc;
  GruVars encoder, decoder;
  Var w_f, q, w_h, w_v, b_v;
};

/// Put every parameter on the tape. With `sinks` the adjoints accumulate
/// there; without, the parameters are constants.
ParamVars bind(Tape& tape, const ModelParams& p, Gradients* sinks);

// --- building blocks on a tape ---------------------------------------------

/// z = sig(W_z[h;x]+b_z), r = sig(W_r[h;x]+b_r), c = tanh(W_c[r*h;x]+b_c),
/// h' = (1-z)*h + z*c.
Var gru_cell(const GruVars& w, Var h_prev, Var x);

struct AttentionVars {
  Var weights;  // m+1, by recency
  Var context;  // H
};

/// `keys[i]` must be W_f[:, H:] h_{t-i} for `states[i]` (see encoder_keys).
AttentionVars attention(const ParamVars& pv, std::span<const Var> states,
                        std::span<const Var> keys, Var decoder_state);
std::vector<Var> encoder_keys(const ParamVars& pv, std::span<const Var> states);

/// Mean absolute error between equal-length vectors (1-element result).
Var loss_mae(Var predictions, Var targets);

struct Encoded {
  std::vector<Var> states;  // by recency: states[0] = h_t
  Var context;              // h_t
};

Encoded encode(const ParamVars& pv, const features::Normalizer& norm, const features::Sample& s);

struct Decoded {
  std::vector<Var> states;
  std::vector<Var> attention;  // per decoder step
  Var predictions;             // n, normalized units
};

Decoded decode(const ParamVars& pv, const features::Normalizer& norm, const features::Sample& s,
               const Encoded& enc);

// --- value-level API --------------------------------------------------------

/// (w_gc[link] . mask[link]) . speeds, summed over all links in index order.
double graph_convolve(const ModelParams& p, std::span<const double> speeds, std::size_t link);

Tensor gru_cell(const GruWeights& w, const Tensor& h_prev, const Tensor& x);

struct AttentionResult {
  Tensor weights;
  Tensor context;
};
/// `states` by recency.
AttentionResult attention(const ModelParams& p, std::span<const Tensor> states,
                          const Tensor& decoder_state);

double loss_mae(std::span<const double> predictions, std::span<const double> targets);

struct ForwardTrace {
  std::vector<Tensor> encoder_states;  // by recency
  std::vector<Tensor> decoder_states;
  Tensor attention;                    // n x (m+1), column i = weight on h_{t-i}
  std::vector<double> normalized;      // predictions in normalized units
  std::vector<double> kmh;             // predictions in km/h
};

ForwardTrace forward(const ModelParams& p, const features::Normalizer& norm,
                     const features::Sample& s);

/// Per-sample training loss (normalized MAE); adds d loss / d params into `grads`.
double loss_and_gradient(const ModelParams& p, const features::Normalizer& norm,
                         const features::Sample& s, Gradients& grads);

/// Forward only, predictions in km/h.
std::vector<double> predict_kmh(const ModelParams& p, const features::Normalizer& norm,
                                const features::Sample& s);

}  // namespace agc::model
