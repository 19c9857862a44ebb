// SPDX-License-Identifier: Apache-2.0
#include "agc/model/network.hpp"

#include <cmath>

#include "agc/errors.hpp"

namespace agc::model {

using features::Normalizer;
using features::Sample;

ParamVars bind(Tape& tape, const ModelParams& p, Gradients* sinks) {
  const auto tensors = p.tensors();
  std::vector<Var> v(tensors.size());
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    v[i] = tape.parameter(*tensors[i], sinks ? &sinks->parts[i] : nullptr);
  }
  ParamVars pv;
  pv.w_gc = v[0];
  pv.encoder = {v[1], v[2], v[3], v[4], v[5], v[6]};
  pv.decoder = {v[7], v[8], v[9], v[10], v[11], v[12]};
  pv.w_f = v[13];
  pv.q = v[14];
  pv.w_h = v[15];
  pv.w_v = v[16];
  pv.b_v = v[17];
  return pv;
}

Var gru_cell(const GruVars& w, Var h_prev, Var x) {
  const std::size_t hidden = w.b_z.value().size();
  if (h_prev.value().size() != hidden || w.w_z.value().cols() != hidden + x.value().size()) {
    throw DimensionError("gru_cell: hidden " + h_prev.value().shape_string() + ", input " +
                         x.value().shape_string() + ", weights " + w.w_z.value().shape_string());
  }
  const Var hx = numcore::concat(h_prev, x);
  const Var z = numcore::sigmoid(numcore::add(numcore::matvec(w.w_z, hx), w.b_z));
  const Var r = numcore::sigmoid(numcore::add(numcore::matvec(w.w_r, hx), w.b_r));
  const Var rhx = numcore::concat(numcore::hadamard(r, h_prev), x);
  const Var c = numcore::tanh_act(numcore::add(numcore::matvec(w.w_c, rhx), w.b_c));
  const Var keep = numcore::hadamard(numcore::affine(z, -1.0, 1.0), h_prev);
  return numcore::add(keep, numcore::hadamard(z, c));
}

std::vector<Var> encoder_keys(const ParamVars& pv, std::span<const Var> states) {
  const std::size_t hidden = pv.q.value().size();
  std::vector<Var> keys;
  keys.reserve(states.size());
  for (const Var& h : states) keys.push_back(numcore::matvec_cols(pv.w_f, hidden, h));
  return keys;
}

AttentionVars attention(const ParamVars& pv, std::span<const Var> states, std::span<const Var> keys,
                        Var decoder_state) {
  if (states.empty() || states.size() != keys.size()) {
    throw DimensionError("attention needs one key per encoder state and at least one state");
  }
  // W_f [h_dec; h_enc] = W_f[:, :H] h_dec + W_f[:, H:] h_enc; the encoder half is precomputed.
  const Var query = numcore::matvec_cols(pv.w_f, 0, decoder_state);
  std::vector<Var> scores;
  scores.reserve(states.size());
  for (const Var& key : keys) {
    scores.push_back(numcore::dot(pv.q, numcore::tanh_act(numcore::add(query, key))));
  }
  const Var weights = numcore::softmax(numcore::concat(std::span<const Var>(scores)));
  return {weights, numcore::weighted_sum(weights, states)};
}

Var loss_mae(Var predictions, Var targets) {
  if (predictions.value().size() != targets.value().size() || predictions.value().empty()) {
    throw DimensionError("loss_mae: " + predictions.value().shape_string() + " predictions vs " +
                         targets.value().shape_string() + " targets");
  }
  return numcore::mean(numcore::abs(numcore::sub(predictions, targets)));
}

Encoded encode(const ParamVars& pv, const Normalizer& norm, const Sample& s) {
  Tape& tape = *pv.q.tape();
  const std::size_t hidden = pv.q.value().size();
  const std::size_t k = s.neighbors.size();
  if (s.steps() == 0 || s.encoder_speeds.size() != s.steps() * k) {
    throw DimensionError("encode: malformed encoder window");
  }
  Var h = tape.constant(Tensor::vector(hidden));
  std::vector<Var> chronological;
  chronological.reserve(s.steps());
  std::vector<double> z(k);
  for (std::size_t step = 0; step < s.steps(); ++step) {
    for (std::size_t c = 0; c < k; ++c) z[c] = norm.speed(s.neighbors[c], s.speed(step, c));
    const Var fused = numcore::row_gather_dot(pv.w_gc, s.link, s.neighbors, z);
    const Var exog = tape.constant(
        Tensor{Normalizer::time_of_day(s.encoder_exog[step][0]), s.encoder_exog[step][1]});
    h = gru_cell(pv.encoder, h, numcore::concat(fused, exog));
    chronological.push_back(h);
  }
  Encoded out;
  out.states.assign(chronological.rbegin(), chronological.rend());
  out.context = out.states.front();
  return out;
}

Decoded decode(const ParamVars& pv, const Normalizer& norm, const Sample& s, const Encoded& enc) {
  Tape& tape = *pv.q.tape();
  if (s.decoder_exog.empty()) throw ValidationError("decode: no decoder steps");
  const auto keys = encoder_keys(pv, enc.states);
  const std::size_t i = s.link;
  Decoded out;
  std::vector<Var> preds;
  Var h = enc.context;
  for (const auto& e : s.decoder_exog) {
    for (double v : e) {
      if (!std::isfinite(v)) throw ValidationError("decode: missing historical stats for a target slot");
    }
    const Var x = tape.constant(Tensor{Normalizer::time_of_day(e[0]), norm.speed(i, e[1]),
                                       norm.speed(i, e[2]), norm.speed(i, e[3]),
                                       norm.speed(i, e[4]), norm.spread(i, e[5])});
    h = gru_cell(pv.decoder, h, x);
    const auto att = attention(pv, enc.states, keys, h);
    const Var attended = numcore::tanh_act(numcore::matvec(pv.w_h, numcore::concat(att.context, h)));
    preds.push_back(numcore::add(numcore::matvec(pv.w_v, attended), pv.b_v));
    out.states.push_back(h);
    out.attention.push_back(att.weights);
  }
  out.predictions = numcore::concat(std::span<const Var>(preds));
  return out;
}

// ---------------------------------------------------------------------------

double graph_convolve(const ModelParams& p, std::span<const double> speeds, std::size_t link) {
  const std::size_t n = p.link_count();
  if (link >= n) throw ReferenceError("graph_convolve: link " + std::to_string(link) + " out of range");
  if (speeds.size() != n) {
    throw DimensionError("graph_convolve: speed vector length " + std::to_string(speeds.size()) +
                         " for " + std::to_string(n) + " links");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += (p.w_gc.at(link, j) * (p.mask(link, j) ? 1.0 : 0.0)) * speeds[j];
  }
  return acc;
}

namespace {

GruVars constant_gru(Tape& tape, const GruWeights& w) {
  return {tape.parameter(w.w_z, nullptr), tape.parameter(w.w_r, nullptr),
          tape.parameter(w.w_c, nullptr), tape.parameter(w.b_z, nullptr),
          tape.parameter(w.b_r, nullptr), tape.parameter(w.b_c, nullptr)};
}

}  // namespace

Tensor gru_cell(const GruWeights& w, const Tensor& h_prev, const Tensor& x) {
  Tape tape;
  const GruVars gv = constant_gru(tape, w);
  return gru_cell(gv, tape.constant(h_prev), tape.constant(x)).value();
}

AttentionResult attention(const ModelParams& p, std::span<const Tensor> states,
                          const Tensor& decoder_state) {
  Tape tape;
  const ParamVars pv = bind(tape, p, nullptr);
  std::vector<Var> sv;
  for (const Tensor& s : states) sv.push_back(tape.constant(s));
  const auto keys = encoder_keys(pv, sv);
  const auto att = attention(pv, sv, keys, tape.constant(decoder_state));
  return {att.weights.value(), att.context.value()};
}

double loss_mae(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size() || predictions.empty()) {
    throw DimensionError("loss_mae: " + std::to_string(predictions.size()) + " predictions vs " +
                         std::to_string(targets.size()) + " targets");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < predictions.size(); ++j) acc += std::fabs(predictions[j] - targets[j]);
  return acc / static_cast<double>(predictions.size());
}

ForwardTrace forward(const ModelParams& p, const Normalizer& norm, const Sample& s) {
  Tape tape;
  const ParamVars pv = bind(tape, p, nullptr);
  const Encoded enc = encode(pv, norm, s);
  const Decoded dec = decode(pv, norm, s, enc);
  ForwardTrace t;
  for (const Var& h : enc.states) t.encoder_states.push_back(h.value());
  for (const Var& h : dec.states) t.decoder_states.push_back(h.value());
  t.attention = Tensor::matrix(dec.attention.size(), enc.states.size());
  for (std::size_t j = 0; j < dec.attention.size(); ++j) {
    for (std::size_t i = 0; i < enc.states.size(); ++i) t.attention.at(j, i) = dec.attention[j].value()[i];
  }
  const Tensor& pred = dec.predictions.value();
  for (std::size_t j = 0; j < pred.size(); ++j) {
    t.normalized.push_back(pred[j]);
    t.kmh.push_back(norm.denormalize(s.link, pred[j]));
  }
  return t;
}

double loss_and_gradient(const ModelParams& p, const Normalizer& norm, const Sample& s,
                         Gradients& grads) {
  Tape tape;
  const ParamVars pv = bind(tape, p, &grads);
  const Encoded enc = encode(pv, norm, s);
  const Decoded dec = decode(pv, norm, s, enc);
  Tensor targets = Tensor::vector(s.horizon());
  for (std::size_t j = 0; j < s.horizon(); ++j) targets[j] = norm.speed(s.link, s.targets[j]);
  const Var loss = loss_mae(dec.predictions, tape.constant(std::move(targets)));
  tape.backward(loss);
  return loss.value()[0];
}

std::vector<double> predict_kmh(const ModelParams& p, const Normalizer& norm, const Sample& s) {
  Tape tape;
  const ParamVars pv = bind(tape, p, nullptr);
  const Encoded enc = encode(pv, norm, s);
  const Tensor& pred = decode(pv, norm, s, enc).predictions.value();
  std::vector<double> out(pred.size());
  for (std::size_t j = 0; j < pred.size(); ++j) out[j] = norm.denormalize(s.link, pred[j]);
  return out;
}

}  // namespace agc::model
