// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "agc/errors.hpp"
#include "agc/numcore/autodiff.hpp"
#include "agc/numcore/ops.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace agc;
using namespace agc::numcore;
using agc::testing::random_matrix;
using agc::testing::random_vector;

namespace {

using Builder = std::function<Var(Tape&, const std::vector<Var>&)>;

// Scalarizes `f` with fixed random output weights and compares the tape
// gradient of every input against central differences.
double max_fd_error(const Builder& f, std::vector<Tensor> inputs, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  Tensor proj;
  auto scalar = [&](const std::vector<Tensor>& xs, std::vector<Tensor>* grads) {
    Tape tape;
    std::vector<Var> vars;
    for (const auto& x : xs) vars.push_back(tape.variable(x));
    Var out = f(tape, vars);
    if (proj.empty()) proj = random_vector(out.value().size(), rng);
    Var loss = dot(out, tape.constant(proj));
    if (grads) {
      tape.backward(loss);
      for (const auto& v : vars) grads->push_back(v.grad());
    }
    return loss.value()[0];
  };
  std::vector<Tensor> grads;
  scalar(inputs, &grads);
  const double h = 1e-6;
  double worst = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (std::size_t e = 0; e < inputs[k].size(); ++e) {
      const double orig = inputs[k][e];
      inputs[k][e] = orig + h;
      const double up = scalar(inputs, nullptr);
      inputs[k][e] = orig - h;
      const double down = scalar(inputs, nullptr);
      inputs[k][e] = orig;
      const double fd = (up - down) / (2 * h);
      const double an = grads[k][e];
      worst = std::max(worst, std::fabs(fd - an) / std::max({std::fabs(fd), std::fabs(an), 1e-3}));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("every op differentiates correctly") {
  std::mt19937_64 rng(11);
  const auto m = random_matrix(4, 7, rng);
  const auto a = random_vector(4, rng);
  const auto b = random_vector(4, rng);
  const auto x = random_vector(7, rng);
  const auto x3 = random_vector(3, rng);

  CHECK(max_fd_error([](Tape&, const auto& v) { return matvec(v[0], v[1]); }, {m, x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return matvec_cols(v[0], 2, v[1]); }, {m, x3}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return add(v[0], v[1]); }, {a, b}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return sub(v[0], v[1]); }, {a, b}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return hadamard(v[0], v[1]); }, {a, b}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return concat({v[0], v[1], v[0]}); }, {a, x3}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return sigmoid(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return tanh_act(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return affine(v[0], -1.5, 2.0); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return softmax(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return dot(v[0], v[1]); }, {a, b}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return abs(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return sum(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return mean(v[0]); }, {x}) < 1e-7);
  CHECK(max_fd_error(
            [](Tape&, const auto& v) {
              const std::vector<Var> parts{v[1], v[2], v[1]};
              return weighted_sum(v[0], parts);
            },
            {x3, a, b}) < 1e-7);
  CHECK(max_fd_error([](Tape&, const auto& v) { return row_gather_dot(v[0], 2, {0, 3, 6}, {0.5, -1.0, 2.0}); },
                     {m}) < 1e-7);
}

TEST_CASE("a composed expression reusing nodes differentiates correctly") {
  std::mt19937_64 rng(2);
  const auto w = random_matrix(3, 6, rng);
  const auto h = random_vector(3, rng);
  const auto x = random_vector(3, rng);
  auto f = [](Tape&, const std::vector<Var>& v) {
    Var hx = concat(v[1], v[2]);
    Var z = sigmoid(matvec(v[0], hx));
    Var c = tanh_act(matvec(v[0], concat(hadamard(z, v[1]), v[2])));
    return add(hadamard(affine(z, -1.0, 1.0), v[1]), hadamard(z, c));
  };
  CHECK(max_fd_error(f, {w, h, x}) < 1e-7);
}

TEST_CASE("row_gather_dot touches only the listed entries") {
  Tape tape;
  Var m = tape.variable(Tensor{{1, 2, 3}, {4, 5, 6}});
  Var y = row_gather_dot(m, 1, {0, 2}, {10.0, 100.0});
  CHECK(y.value()[0] == 4 * 10.0 + 6 * 100.0);
  tape.backward(y);
  CHECK(m.grad() == Tensor{{0, 0, 0}, {10, 0, 100}});
}

TEST_CASE("abs has zero subgradient at zero") {
  Tape tape;
  Var x = tape.variable(Tensor{-2.0, 0.0, 3.0});
  tape.backward(sum(abs(x)));
  CHECK(x.grad() == Tensor{-1.0, 0.0, 1.0});
}

TEST_CASE("parameter sinks accumulate across tapes") {
  const Tensor w{2.0, 3.0};
  Tensor sink = Tensor::vector(2);
  for (int pass = 0; pass < 3; ++pass) {
    Tape tape;
    Var p = tape.parameter(w, &sink);
    tape.backward(dot(p, tape.constant(Tensor{1.0, -1.0})));
  }
  CHECK(sink == Tensor{3.0, -3.0});

  Tape tape;
  Var c = tape.parameter(w, nullptr);
  CHECK(!tape.node(c.id()).needs_grad);
}

TEST_CASE("fan-out adjoints add up") {
  Tape tape;
  Var x = tape.variable(Tensor{3.0});
  Var y = hadamard(x, x);  // x^2
  tape.backward(sum(add(y, x)));
  CHECK(x.grad()[0] == 7.0);
}

TEST_CASE("backward needs a scalar") {
  Tape tape;
  Var x = tape.variable(Tensor{1.0, 2.0});
  CHECK_THROWS_AS(tape.backward(x), DimensionError);
  Tape other;
  Var y = other.variable(Tensor{1.0});
  CHECK_THROWS(add(tape.variable(Tensor{1.0}), y));
}
