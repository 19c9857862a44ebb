// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/autodiff.hpp"

#include <cmath>
#include <string>

#include "agc/errors.hpp"
#include "agc/numcore/kernels.hpp"
#include "agc/numcore/ops.hpp"

namespace agc::numcore {

const Tensor& Var::value() const { return tape_->node(id_).val(); }

Tensor Var::grad() const {
  const GradNode& n = tape_->node(id_);
  if (n.sink) return *n.sink;
  if (n.grad.size() == n.val().size()) return n.grad;
  return Tensor::zeros_like(n.val());
}

Var Tape::constant(Tensor value) {
  GradNode n;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::variable(Tensor value) {
  GradNode n;
  n.value = std::move(value);
  n.needs_grad = true;
  return push(std::move(n));
}

Var Tape::parameter(const Tensor& value, Tensor* sink) {
  if (sink && !sink->same_shape(value)) {
    throw DimensionError("parameter sink must match value shape " + value.shape_string());
  }
  GradNode n;
  n.external = &value;
  n.sink = sink;
  n.needs_grad = sink != nullptr;
  return push(std::move(n));
}

Var Tape::push(GradNode node) {
  if (node.op != Op::Leaf) {
    for (std::uint32_t p : node.parents) {
      if (p >= nodes_.size()) throw InternalError("tape: parent id after child");
      node.needs_grad = node.needs_grad || nodes_[p].needs_grad;
    }
  }
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Tensor& Tape::grad_buffer(std::uint32_t id) {
  GradNode& n = nodes_[id];
  if (n.sink) return *n.sink;
  if (n.grad.size() != n.val().size()) n.grad = Tensor::zeros_like(n.val());
  return n.grad;
}

void Tape::accumulate(std::uint32_t id, std::span<const double> delta) {
  if (!nodes_[id].needs_grad) return;
  Tensor& g = grad_buffer(id);
  kernels::active().axpy(delta.size(), 1.0, delta.data(), g.values().data());
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw InternalError("backward: node from another tape");
  if (loss.value().size() != 1) {
    throw DimensionError("backward: loss must be scalar, got " + loss.value().shape_string());
  }
  const auto& k = kernels::active();
  grad_buffer(loss.id())[0] += 1.0;

  for (std::uint32_t id = loss.id() + 1; id-- > 0;) {
    GradNode& n = nodes_[id];
    if (n.op == Op::Leaf || !n.needs_grad || n.grad.size() != n.val().size()) continue;
    const Tensor& g = n.grad;
    const Tensor& y = n.value;
    auto needs = [&](std::size_t i) { return nodes_[n.parents[i]].needs_grad; };
    auto pval = [&](std::size_t i) -> const Tensor& { return nodes_[n.parents[i]].val(); };

    switch (n.op) {
      case Op::Leaf:
        break;
      case Op::MatVec: {
        const Tensor& m = pval(0);
        const Tensor& v = pval(1);
        if (needs(0)) {
          Tensor& gm = grad_buffer(n.parents[0]);
          k.outer_acc({gm.values().data(), m.rows(), m.cols(), n.offset, v.size()},
                      g.values().data(), v.values().data());
        }
        if (needs(1)) {
          Tensor& gv = grad_buffer(n.parents[1]);
          k.matvec_t_acc({m.values().data(), m.rows(), m.cols(), n.offset, v.size()},
                         g.values().data(), gv.values().data());
        }
        break;
      }
      case Op::Add:
        accumulate(n.parents[0], g.values());
        accumulate(n.parents[1], g.values());
        break;
      case Op::Sub: {
        accumulate(n.parents[0], g.values());
        if (needs(1)) {
          Tensor& gb = grad_buffer(n.parents[1]);
          k.axpy(g.size(), -1.0, g.values().data(), gb.values().data());
        }
        break;
      }
      case Op::Hadamard: {
        // Both parents may be the same node (x * x); read values before writing.
        const Tensor da = numcore::hadamard(g, pval(1));
        const Tensor db = numcore::hadamard(g, pval(0));
        accumulate(n.parents[0], da.values());
        accumulate(n.parents[1], db.values());
        break;
      }
      case Op::Concat: {
        std::size_t at = 0;
        for (std::uint32_t p : n.parents) {
          const std::size_t len = nodes_[p].val().size();
          accumulate(p, g.values().subspan(at, len));
          at += len;
        }
        break;
      }
      case Op::Sigmoid: {
        Tensor d = Tensor::zeros_like(y);
        for (std::size_t i = 0; i < y.size(); ++i) d[i] = g[i] * y[i] * (1.0 - y[i]);
        accumulate(n.parents[0], d.values());
        break;
      }
      case Op::Tanh: {
        Tensor d = Tensor::zeros_like(y);
        for (std::size_t i = 0; i < y.size(); ++i) d[i] = g[i] * (1.0 - y[i] * y[i]);
        accumulate(n.parents[0], d.values());
        break;
      }
      case Op::Affine: {
        if (needs(0)) {
          Tensor& gx = grad_buffer(n.parents[0]);
          k.axpy(g.size(), n.scale, g.values().data(), gx.values().data());
        }
        break;
      }
      case Op::Softmax: {
        double gy = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) gy += g[i] * y[i];
        Tensor d = Tensor::zeros_like(y);
        for (std::size_t i = 0; i < y.size(); ++i) d[i] = y[i] * (g[i] - gy);
        accumulate(n.parents[0], d.values());
        break;
      }
      case Op::Dot: {
        const Tensor& a = pval(0);
        const Tensor& b = pval(1);
        if (needs(0)) k.axpy(b.size(), g[0], b.values().data(), grad_buffer(n.parents[0]).values().data());
        if (needs(1)) k.axpy(a.size(), g[0], a.values().data(), grad_buffer(n.parents[1]).values().data());
        break;
      }
      case Op::Abs: {
        const Tensor& x = pval(0);
        Tensor d = Tensor::zeros_like(x);
        for (std::size_t i = 0; i < x.size(); ++i) {
          d[i] = x[i] > 0.0 ? g[i] : (x[i] < 0.0 ? -g[i] : 0.0);
        }
        accumulate(n.parents[0], d.values());
        break;
      }
      case Op::Sum:
      case Op::Mean: {
        const Tensor& x = pval(0);
        const double each = n.op == Op::Sum ? g[0] : g[0] / static_cast<double>(x.size());
        Tensor d = Tensor::vector(x.size(), each);
        accumulate(n.parents[0], d.values());
        break;
      }
      case Op::WeightedSum: {
        const Tensor& w = pval(0);
        const std::size_t count = n.parents.size() - 1;
        if (needs(0)) {
          Tensor dw = Tensor::vector(count);
          for (std::size_t i = 0; i < count; ++i) dw[i] = numcore::dot(g, pval(i + 1));
          accumulate(n.parents[0], dw.values());
        }
        for (std::size_t i = 0; i < count; ++i) {
          if (!needs(i + 1)) continue;
          Tensor& gv = grad_buffer(n.parents[i + 1]);
          k.axpy(g.size(), w[i], g.values().data(), gv.values().data());
        }
        break;
      }
      case Op::RowGatherDot: {
        if (needs(0)) {
          Tensor& gm = grad_buffer(n.parents[0]);
          auto row = gm.row(n.offset);
          for (std::size_t c = 0; c < n.columns.size(); ++c) {
            row[n.columns[c]] += g[0] * n.inputs[c];
          }
        }
        break;
      }
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

Tape& same_tape(Var a, Var b, const char* what) {
  if (a.tape() == nullptr || a.tape() != b.tape()) {
    throw InternalError(std::string(what) + ": operands on different tapes");
  }
  return *a.tape();
}

Var unary(Op op, Var x, Tensor value) {
  GradNode n;
  n.op = op;
  n.value = std::move(value);
  n.parents = {x.id()};
  return x.tape()->push(std::move(n));
}

Var binary(Op op, Var a, Var b, Tensor value, const char* what) {
  Tape& t = same_tape(a, b, what);
  GradNode n;
  n.op = op;
  n.value = std::move(value);
  n.parents = {a.id(), b.id()};
  return t.push(std::move(n));
}

}  // namespace

Var matvec(Var m, Var v) {
  if (v.value().size() != m.value().cols()) {
    throw DimensionError("matvec: shape mismatch " + m.value().shape_string() + " * " + v.value().shape_string());
  }
  return matvec_cols(m, 0, v);
}

Var matvec_cols(Var m, std::size_t col_offset, Var v) {
  Tape& t = same_tape(m, v, "matvec");
  GradNode n;
  n.op = Op::MatVec;
  n.value = numcore::matvec_cols(m.value(), col_offset, v.value());
  n.parents = {m.id(), v.id()};
  n.offset = col_offset;
  return t.push(std::move(n));
}

Var add(Var a, Var b) { return binary(Op::Add, a, b, numcore::add(a.value(), b.value()), "add"); }
Var sub(Var a, Var b) { return binary(Op::Sub, a, b, numcore::sub(a.value(), b.value()), "sub"); }
Var hadamard(Var a, Var b) {
  return binary(Op::Hadamard, a, b, numcore::hadamard(a.value(), b.value()), "hadamard");
}

Var concat(Var a, Var b) { return concat({a, b}); }
Var concat(std::initializer_list<Var> parts) {
  return concat(std::span<const Var>(parts.begin(), parts.size()));
}

Var concat(std::span<const Var> parts) {
  if (parts.empty()) throw DimensionError("concat: no operands");
  std::vector<const Tensor*> values;
  GradNode n;
  n.op = Op::Concat;
  for (const Var& p : parts) {
    same_tape(parts.front(), p, "concat");
    values.push_back(&p.value());
    n.parents.push_back(p.id());
  }
  n.value = numcore::concat(values);
  return parts.front().tape()->push(std::move(n));
}

Var sigmoid(Var x) { return unary(Op::Sigmoid, x, numcore::sigmoid(x.value())); }
Var tanh_act(Var x) { return unary(Op::Tanh, x, numcore::tanh_act(x.value())); }

Var affine(Var x, double scale, double shift) {
  Tensor y = Tensor::zeros_like(x.value());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = scale * x.value()[i] + shift;
  GradNode n;
  n.op = Op::Affine;
  n.value = std::move(y);
  n.parents = {x.id()};
  n.scale = scale;
  return x.tape()->push(std::move(n));
}

Var softmax(Var u) { return unary(Op::Softmax, u, numcore::softmax(u.value())); }

Var dot(Var a, Var b) {
  return binary(Op::Dot, a, b, Tensor{numcore::dot(a.value(), b.value())}, "dot");
}

Var abs(Var x) {
  Tensor y = Tensor::zeros_like(x.value());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::fabs(x.value()[i]);
  return unary(Op::Abs, x, std::move(y));
}

Var sum(Var x) {
  double acc = 0.0;
  for (double v : x.value().values()) acc += v;
  return unary(Op::Sum, x, Tensor{acc});
}

Var mean(Var x) {
  if (x.value().empty()) throw DomainError("mean of an empty vector");
  double acc = 0.0;
  for (double v : x.value().values()) acc += v;
  return unary(Op::Mean, x, Tensor{acc / static_cast<double>(x.value().size())});
}

Var weighted_sum(Var weights, std::span<const Var> vectors) {
  const Tensor& w = weights.value();
  if (w.rank() != 1 || w.size() != vectors.size() || vectors.empty()) {
    throw DimensionError("weighted_sum: " + std::to_string(vectors.size()) + " vectors, weights " +
                         w.shape_string());
  }
  const Tensor& first = vectors.front().value();
  Tensor out = Tensor::zeros_like(first);
  GradNode n;
  n.op = Op::WeightedSum;
  n.parents.push_back(weights.id());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    same_tape(weights, vectors[i], "weighted_sum");
    const Tensor& v = vectors[i].value();
    if (!v.same_shape(first)) {
      throw DimensionError("weighted_sum: shape mismatch " + first.shape_string() + " vs " +
                           v.shape_string());
    }
    kernels::active().axpy(v.size(), w[i], v.values().data(), out.values().data());
    n.parents.push_back(vectors[i].id());
  }
  n.value = std::move(out);
  return weights.tape()->push(std::move(n));
}

Var row_gather_dot(Var m, std::size_t row, std::vector<std::size_t> columns,
                   std::vector<double> inputs) {
  const Tensor& mv = m.value();
  if (mv.rank() != 2 || row >= mv.rows() || columns.size() != inputs.size()) {
    throw DimensionError("row_gather_dot: row " + std::to_string(row) + " of " + mv.shape_string());
  }
  auto r = mv.row(row);
  double acc = 0.0;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= mv.cols()) throw DimensionError("row_gather_dot: column out of range");
    acc += r[columns[k]] * inputs[k];
  }
  GradNode n;
  n.op = Op::RowGatherDot;
  n.value = Tensor{acc};
  n.parents = {m.id()};
  n.offset = row;
  n.columns = std::move(columns);
  n.inputs = std::move(inputs);
  return m.tape()->push(std::move(n));
}

}  // namespace agc::numcore
