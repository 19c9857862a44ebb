// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "agc/errors.hpp"
#include "agc/numcore/ops.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace agc;
using namespace agc::numcore;
using agc::testing::random_matrix;
using agc::testing::random_vector;

TEST_CASE("tensor shapes") {
  Tensor v{1.0, 2.0, 3.0};
  CHECK(v.rank() == 1);
  CHECK(v.rows() == 3);
  CHECK(v.cols() == 1);
  Tensor m{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
  CHECK(m.rank() == 2);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.at(2, 1) == 6.0);
  CHECK(m.shape_string() == "[3x2]");
  CHECK_THROWS_AS((Tensor{{1.0, 2.0}, {3.0}}), DimensionError);
  CHECK_THROWS_AS(Tensor::matrix(2, 2, std::vector<double>{1.0}), DimensionError);
  CHECK(Tensor().empty());
}

TEST_CASE("matvec matches a naive loop") {
  std::mt19937_64 rng(3);
  for (std::size_t r : {1u, 3u, 8u, 17u}) {
    for (std::size_t c : {1u, 2u, 5u, 33u}) {
      const auto m = random_matrix(r, c, rng);
      const auto v = random_vector(c, rng);
      const auto out = matvec(m, v);
      for (std::size_t i = 0; i < r; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < c; ++j) acc += m.at(i, j) * v[j];
        CHECK(out[i] == acc);
      }
    }
  }
}

TEST_CASE("matvec_cols uses a column window") {
  Tensor m{{1, 2, 3, 4}, {5, 6, 7, 8}};
  const auto out = matvec_cols(m, 1, Tensor{1.0, 1.0});
  CHECK(out == Tensor{5.0, 13.0});
  CHECK_THROWS_AS(matvec_cols(m, 3, Tensor{1.0, 1.0}), DimensionError);
}

TEST_CASE("shape errors name both operands") {
  const auto m = Tensor::matrix(3, 4);
  try {
    matvec(m, Tensor::vector(5));
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[3x4]") != std::string::npos);
    CHECK(msg.find("[5]") != std::string::npos);
  }
  CHECK_THROWS_AS(add(Tensor{1.0}, Tensor{1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(hadamard(Tensor{1.0}, Tensor{1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(concat(Tensor{1.0}, Tensor::matrix(2, 2)), RankError);
}

TEST_CASE("elementwise ops") {
  CHECK(hadamard(Tensor{1, 2, 3}, Tensor{4, 5, 6}) == Tensor{4, 10, 18});
  CHECK(add(Tensor{1, 2}, Tensor{3, 4}) == Tensor{4, 6});
  CHECK(sub(Tensor{1, 2}, Tensor{3, 5}) == Tensor{-2, -3});
  CHECK(concat(Tensor{1}, Tensor{2, 3}) == Tensor{1, 2, 3});
  CHECK(dot(Tensor{1, 2, 3}, Tensor{4, 5, 6}) == 32.0);
}

TEST_CASE("sigmoid is stable at the extremes") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(sigmoid(-800.0) == doctest::Approx(0.0));
  CHECK(std::isfinite(sigmoid(-800.0)));
  for (double x : {-30.0, -2.5, -1e-3, 1e-3, 2.5, 30.0}) {
    CHECK(sigmoid(x) == doctest::Approx(1.0 / (1.0 + std::exp(-x))).epsilon(1e-14));
    CHECK(sigmoid(x) + sigmoid(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto t = tanh_act(Tensor{-1000.0, 0.0, 0.5});
  CHECK(t[0] == -1.0);
  CHECK(t[1] == 0.0);
  CHECK(t[2] == std::tanh(0.5));
}

TEST_CASE("softmax") {
  const auto a = softmax(Tensor{1000.0, 1000.0, 1000.0, 1000.0});
  for (double v : a.values()) CHECK(v == 0.25);
  const auto b = softmax(Tensor{1.0, 2.0, 3.0});
  const double z = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  CHECK(b[2] == doctest::Approx(std::exp(3.0) / z).epsilon(1e-14));
  const auto c = softmax(Tensor{-1e308, 0.0});
  CHECK(c[1] == 1.0);
  CHECK(c[0] == 0.0);
  CHECK_THROWS_AS(softmax(Tensor()), DomainError);
}

TEST_CASE("softmax is a probability vector on random inputs") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = softmax(random_vector(1 + trial % 13, rng, 50.0));
    double s = 0.0;
    for (double v : p.values()) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(std::fabs(s - 1.0) < 1e-12);
  }
}
