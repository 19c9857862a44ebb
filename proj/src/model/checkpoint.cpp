// SPDX-License-Identifier: Apache-2.0
#include "agc/model/checkpoint.hpp"

#include <fstream>

#include "agc/errors.hpp"

namespace agc::model {

using nlohmann::json;

namespace {

json tensor_json(const Tensor& t) {
  json shape = t.rank() == 1 ? json::array({t.size()}) : json::array({t.rows(), t.cols()});
  return {{"shape", shape}, {"values", std::vector<double>(t.values().begin(), t.values().end())}};
}

Tensor tensor_from_json(const json& j, const std::string& name) {
  const auto shape = j.at("shape").get<std::vector<std::size_t>>();
  auto values = j.at("values").get<std::vector<double>>();
  if (shape.size() == 1 && values.size() == shape[0]) return Tensor::vector(std::move(values));
  if (shape.size() == 2 && values.size() == shape[0] * shape[1]) {
    return Tensor::matrix(shape[0], shape[1], std::move(values));
  }
  throw FormatError("checkpoint tensor " + name + ": shape and value count disagree");
}

std::string shape_of(const Tensor& t) { return t.shape_string(); }

}  // namespace

json to_json(const Checkpoint& c) {
  const auto& p = c.params;
  json tensors = json::object();
  const auto names = ModelParams::tensor_names();
  const auto ts = p.tensors();
  for (std::size_t k = 0; k < ts.size(); ++k) tensors[names[k]] = tensor_json(*ts[k]);
  std::vector<int> bits(p.mask.bits().begin(), p.mask.bits().end());
  return {
      {"format", kCheckpointFormat},
      {"version", kCheckpointVersion},
      {"hidden", p.hidden()},
      {"link_ids", c.link_ids},
      {"mask", {{"order", p.mask.order()}, {"mode", graph::to_string(p.mask.mode())}, {"bits", bits}}},
      {"normalizer", {{"mean", c.normalizer.means()}, {"std", c.normalizer.stds()}}},
      {"hyperparameters", c.hyperparameters},
      {"tensors", tensors},
  };
}

Checkpoint checkpoint_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) {
      throw FormatError("not a checkpoint file");
    }
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw FormatError("unsupported checkpoint version " + std::to_string(version));
    }
    Checkpoint c;
    c.link_ids = j.at("link_ids").get<std::vector<std::string>>();
    const std::size_t n = c.link_ids.size();
    const json& m = j.at("mask");
    const auto raw = m.at("bits").get<std::vector<int>>();
    std::vector<std::uint8_t> bits(raw.begin(), raw.end());
    if (bits.size() != n * n) throw FormatError("checkpoint mask is not |L| x |L|");
    const std::size_t hidden = j.at("hidden").get<std::size_t>();
    c.params = zero_params(graph::HopMask(m.at("order").get<std::size_t>(),
                                          graph::parse_hop_mode(m.at("mode").get<std::string>()), n,
                                          std::move(bits)),
                           hidden);
    const auto names = ModelParams::tensor_names();
    const auto ts = c.params.tensors();
    const json& tj = j.at("tensors");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      Tensor t = tensor_from_json(tj.at(names[k]), names[k]);
      if (!t.same_shape(*ts[k])) {
        throw FormatError("checkpoint tensor " + names[k] + " has shape " + shape_of(t) +
                          ", expected " + shape_of(*ts[k]) + " for hidden " + std::to_string(hidden));
      }
      *ts[k] = std::move(t);
    }
    if (!c.params.mask_respected()) throw FormatError("checkpoint w_gc has weights outside its mask");
    c.normalizer = features::Normalizer(j.at("normalizer").at("mean").get<std::vector<double>>(),
                                        j.at("normalizer").at("std").get<std::vector<double>>());
    if (c.normalizer.link_count() != n) throw FormatError("checkpoint normalizer size differs from link count");
    c.hyperparameters = j.value("hyperparameters", json::object());
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(c).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

void check_compatible(const Checkpoint& c, const graph::RoadGraph& g) {
  if (c.link_ids.size() != g.link_count()) {
    throw ValidationError("checkpoint has " + std::to_string(c.link_ids.size()) +
                          " links but the graph has " + std::to_string(g.link_count()));
  }
  for (std::size_t i = 0; i < g.link_count(); ++i) {
    if (c.link_ids[i] != g.link_id(i)) {
      throw ValidationError("checkpoint link " + std::to_string(i) + " is '" + c.link_ids[i] +
                            "' but the graph has '" + g.link_id(i) + "'");
    }
  }
  const auto& m = c.params.mask;
  if (!(graph::hop_mask(g, m.order(), m.mode()) == m)) {
    throw ValidationError("checkpoint " + std::to_string(m.order()) + "-hop " + graph::to_string(m.mode()) +
                          " mask does not match the graph's connectivity");
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const graph::RoadGraph& g) {
  Checkpoint c = load_checkpoint(path);
  check_compatible(c, g);
  return c;
}

}  // namespace agc::model
