// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace agc::numcore {

/// Dense row-major tensor of doubles, rank 1 or 2.
///
/// A default-constructed tensor is the empty vector (rank 1, length 0).
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::initializer_list<double> values);
  Tensor(std::initializer_list<std::initializer_list<double>> rows);

  static Tensor vector(std::size_t n, double fill = 0.0);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Tensor zeros_like(const Tensor& other);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// Rows of a matrix; length of a vector.
  std::size_t rows() const { return dims_[0]; }
  /// Columns of a matrix; 1 for a vector.
  std::size_t cols() const { return rank_ == 2 ? dims_[1] : 1; }
  std::vector<std::size_t> shape() const;
  bool same_shape(const Tensor& other) const;
  std::string shape_string() const;

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols(), cols()}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }

  void fill(double v);
  bool all_finite() const;

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  std::size_t rank_ = 1;
  std::array<std::size_t, 2> dims_{0, 1};
  std::vector<double> values_;
};

}  // namespace agc::numcore
