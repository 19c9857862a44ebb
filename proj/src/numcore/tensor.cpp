// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "agc/errors.hpp"

namespace agc::numcore {

Tensor::Tensor(std::initializer_list<double> values)
    : rank_(1), dims_{values.size(), 1}, values_(values) {}

Tensor::Tensor(std::initializer_list<std::initializer_list<double>> rows) : rank_(2) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  values_.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw DimensionError("ragged matrix literal");
    }
    values_.insert(values_.end(), row.begin(), row.end());
  }
  dims_ = {r, c};
}

Tensor Tensor::vector(std::size_t n, double fill) {
  Tensor t;
  t.rank_ = 1;
  t.dims_ = {n, 1};
  t.values_.assign(n, fill);
  return t;
}

Tensor Tensor::vector(std::vector<double> values) {
  Tensor t;
  t.rank_ = 1;
  t.dims_ = {values.size(), 1};
  t.values_ = std::move(values);
  return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, double fill) {
  Tensor t;
  t.rank_ = 2;
  t.dims_ = {rows, cols};
  t.values_.assign(rows * cols, fill);
  return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw DimensionError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " given " + std::to_string(values.size()) + " values");
  }
  Tensor t;
  t.rank_ = 2;
  t.dims_ = {rows, cols};
  t.values_ = std::move(values);
  return t;
}

Tensor Tensor::zeros_like(const Tensor& other) {
  Tensor t = other;
  t.fill(0.0);
  return t;
}

std::vector<std::size_t> Tensor::shape() const {
  if (rank_ == 1) return {dims_[0]};
  return {dims_[0], dims_[1]};
}

bool Tensor::same_shape(const Tensor& other) const {
  return rank_ == other.rank_ && dims_ == other.dims_;
}

std::string Tensor::shape_string() const {
  if (rank_ == 1) return "[" + std::to_string(dims_[0]) + "]";
  return "[" + std::to_string(dims_[0]) + "x" + std::to_string(dims_[1]) + "]";
}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

bool Tensor::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace agc::numcore
