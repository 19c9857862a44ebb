// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/ops.hpp"

#include <algorithm>
#include <cmath>

#include "agc/errors.hpp"
#include "agc/numcore/kernels.hpp"

namespace agc::numcore {
namespace {

void require_vector(const Tensor& t, const char* what) {
  if (t.rank() != 1) {
    throw RankError(std::string(what) + ": expected 1-D tensor, got " + t.shape_string());
  }
}

void require_same(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + a.shape_string() + " vs " +
                         b.shape_string());
  }
}

}  // namespace

Tensor matvec(const Tensor& m, const Tensor& v) {
  if (m.rank() != 2 || v.rank() != 1 || v.size() != m.cols()) {
    throw DimensionError("matvec: shape mismatch " + m.shape_string() + " * " + v.shape_string());
  }
  return matvec_cols(m, 0, v);
}

Tensor matvec_cols(const Tensor& m, std::size_t col_offset, const Tensor& v) {
  if (m.rank() != 2 || v.rank() != 1 || col_offset + v.size() > m.cols()) {
    throw DimensionError("matvec: shape mismatch " + m.shape_string() + " * " + v.shape_string() +
                         (col_offset ? " at column " + std::to_string(col_offset) : ""));
  }
  Tensor out = Tensor::vector(m.rows());
  kernels::active().matvec({m.values().data(), m.rows(), m.cols(), col_offset, v.size()},
                           v.values().data(), out.values().data());
  return out;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same(a, b, "hadamard");
  Tensor out = Tensor::zeros_like(a);
  kernels::active().hadamard(a.size(), a.values().data(), b.values().data(), out.values().data());
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same(a, b, "add");
  Tensor out = Tensor::zeros_like(a);
  kernels::active().add(a.size(), a.values().data(), b.values().data(), out.values().data());
  return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same(a, b, "sub");
  Tensor out = Tensor::zeros_like(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Tensor concat(const Tensor& a, const Tensor& b) {
  const Tensor* parts[] = {&a, &b};
  return concat(parts);
}

Tensor concat(std::span<const Tensor* const> parts) {
  std::size_t n = 0;
  for (const Tensor* p : parts) {
    require_vector(*p, "concat");
    n += p->size();
  }
  std::vector<double> values;
  values.reserve(n);
  for (const Tensor* p : parts) {
    values.insert(values.end(), p->values().begin(), p->values().end());
  }
  return Tensor::vector(std::move(values));
}

double sigmoid(double x) {
  // Branch on sign so exp never overflows.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = Tensor::zeros_like(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sigmoid(x[i]);
  return out;
}

Tensor tanh_act(const Tensor& x) {
  Tensor out = Tensor::zeros_like(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::tanh(x[i]);
  return out;
}

Tensor softmax(const Tensor& u) {
  require_vector(u, "softmax");
  if (u.empty()) throw DomainError("softmax of an empty vector");
  const double hi = *std::max_element(u.values().begin(), u.values().end());
  Tensor out = Tensor::zeros_like(u);
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = std::exp(u[i] - hi);
    total += out[i];
  }
  for (std::size_t i = 0; i < u.size(); ++i) out[i] /= total;
  return out;
}

double dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: shape mismatch " + a.shape_string() + " vs " + b.shape_string());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace agc::numcore
