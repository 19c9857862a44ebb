// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reverse-mode differentiation over a per-forward-pass tape.
//
// Nodes are appended in evaluation order, so a node's parents always have
// smaller ids and the graph is acyclic by construction; backward() sweeps the
// tape from the end. A Tape is confined to one thread. Parameters enter as
// leaves that reference caller-owned tensors and accumulate their adjoints
// into a caller-owned sink, which lets independent per-sample tapes run
// concurrently against shared read-only weights.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "agc/numcore/tensor.hpp"

namespace agc::numcore {

class Tape;

/// Handle to a node on a tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::uint32_t id) : tape_(tape), id_(id) {}

  Tape* tape() const { return tape_; }
  std::uint32_t id() const { return id_; }
  const Tensor& value() const;
  /// Adjoint after backward(); zeros if the node received none.
  Tensor grad() const;

 private:
  Tape* tape_ = nullptr;
  std::uint32_t id_ = 0;
};

enum class Op : std::uint8_t {
  Leaf,
  MatVec,
  Add,
  Sub,
  Hadamard,
  Concat,
  Sigmoid,
  Tanh,
  Affine,
  Softmax,
  Dot,
  Abs,
  Sum,
  Mean,
  WeightedSum,
  RowGatherDot,
};

/// One tape entry: value, operands, and what backward needs to route adjoints.
struct GradNode {
  Op op = Op::Leaf;
  Tensor value;
  const Tensor* external = nullptr;  // parameter leaves: value lives outside the tape
  Tensor* sink = nullptr;            // parameter leaves: adjoint accumulates here
  Tensor grad;
  bool needs_grad = false;
  std::vector<std::uint32_t> parents;
  std::size_t offset = 0;           // MatVec column window / RowGatherDot row
  double scale = 0.0;               // Affine
  std::vector<std::size_t> columns;  // RowGatherDot
  std::vector<double> inputs;        // RowGatherDot

  const Tensor& val() const { return external ? *external : value; }
};

class Tape {
 public:
  Tape() { nodes_.reserve(512); }
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf with no adjoint.
  Var constant(Tensor value);
  /// Owned leaf whose adjoint is kept on the tape (read it with Var::grad).
  Var variable(Tensor value);
  /// Leaf referencing `value`; its adjoint is added into `*sink` (same shape)
  /// by backward(). A null sink makes it a constant. Both must outlive the tape.
  Var parameter(const Tensor& value, Tensor* sink);

  /// Reverse sweep from a scalar (1-element) node.
  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }
  const GradNode& node(std::uint32_t id) const { return nodes_[id]; }

  // Used by the op functions below.
  Var push(GradNode node);

 private:
  void accumulate(std::uint32_t id, std::span<const double> delta);
  Tensor& grad_buffer(std::uint32_t id);

  std::vector<GradNode> nodes_;
};

Var matvec(Var m, Var v);
/// m[:, col_offset : col_offset + |v|] * v; lets a product with a
/// concatenation be split into per-block products.
Var matvec_cols(Var m, std::size_t col_offset, Var v);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var concat(Var a, Var b);
Var concat(std::initializer_list<Var> parts);
Var concat(std::span<const Var> parts);
Var sigmoid(Var x);
Var tanh_act(Var x);
/// scale * x + shift, element-wise.
Var affine(Var x, double scale, double shift);
Var softmax(Var u);
/// 1-element result.
Var dot(Var a, Var b);
/// |x| with subgradient 0 at x = 0.
Var abs(Var x);
Var sum(Var x);
Var mean(Var x);
/// sum_i w[i] * vectors[i], accumulated in increasing i.
Var weighted_sum(Var weights, std::span<const Var> vectors);
/// sum_k m(row, columns[k]) * inputs[k] as a 1-element result; the adjoint
/// reaches only the listed entries of m. `inputs` are constants.
Var row_gather_dot(Var m, std::size_t row, std::vector<std::size_t> columns,
                   std::vector<double> inputs);

}  // namespace agc::numcore
