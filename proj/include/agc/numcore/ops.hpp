// SPDX-License-Identifier: Apache-2.0
#pragma once

// Value-level tensor operations. These compute forward results only; the
// differentiable versions live in autodiff.hpp and call into these.

#include <cstddef>
#include <span>

#include "agc/numcore/tensor.hpp"

namespace agc::numcore {

/// m * v. Throws DimensionError naming both shapes on mismatch.
Tensor matvec(const Tensor& m, const Tensor& v);
/// m[:, col_offset : col_offset + |v|] * v.
Tensor matvec_cols(const Tensor& m, std::size_t col_offset, const Tensor& v);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
/// a followed by b. Both must be rank 1.
Tensor concat(const Tensor& a, const Tensor& b);
Tensor concat(std::span<const Tensor* const> parts);
Tensor sigmoid(const Tensor& x);
Tensor tanh_act(const Tensor& x);
/// exp(u_i - max u) / sum_r exp(u_r - max u). Throws DomainError when empty.
Tensor softmax(const Tensor& u);
double dot(const Tensor& a, const Tensor& b);

double sigmoid(double x);

}  // namespace agc::numcore
