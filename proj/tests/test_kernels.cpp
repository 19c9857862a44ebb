// SPDX-License-Identifier: Apache-2.0
#include <cstring>
#include <random>
#include <vector>

#include "agc/numcore/kernels.hpp"
#include "doctest.h"

using namespace agc::numcore::kernels;

namespace {

std::vector<double> randv(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<KernelTable> vector_backends() {
  std::vector<KernelTable> out;
  if (auto t = avx2_table(); t && cpu_supports(Backend::Avx2)) out.push_back(*t);
  if (auto t = neon_table(); t && cpu_supports(Backend::Neon)) out.push_back(*t);
  return out;
}

}  // namespace

TEST_CASE("scalar kernels match direct loops") {
  std::mt19937_64 rng(1);
  const auto& k = scalar_table();
  const std::size_t rows = 5, ld = 9, off = 2, cols = 6;
  const auto m = randv(rows * ld, rng);
  const auto v = randv(cols, rng);
  const auto g = randv(rows, rng);

  std::vector<double> out(rows);
  k.matvec({m.data(), rows, ld, off, cols}, v.data(), out.data());
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += m[r * ld + off + c] * v[c];
    CHECK(out[r] == acc);
  }

  std::vector<double> t(cols, 1.0), t_ref(cols, 1.0);
  k.matvec_t_acc({m.data(), rows, ld, off, cols}, g.data(), t.data());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) t_ref[c] += m[r * ld + off + c] * g[r];
  }
  CHECK(bits_equal(t, t_ref));

  auto acc = m, acc_ref = m;
  k.outer_acc({acc.data(), rows, ld, off, cols}, g.data(), v.data());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) acc_ref[r * ld + off + c] += g[r] * v[c];
  }
  CHECK(bits_equal(acc, acc_ref));
}

TEST_CASE("vector backends are bit-identical to scalar") {
  const auto backends = vector_backends();
  if (backends.empty()) {
    MESSAGE("no vector backend on this CPU; only the scalar path is exercised");
    return;
  }
  const auto& s = scalar_table();
  std::mt19937_64 rng(42);
  for (const auto& k : backends) {
    CAPTURE(k.name);
    for (std::size_t rows = 1; rows <= 19; rows += 3) {
      for (std::size_t cols = 1; cols <= 37; cols += 4) {
        for (std::size_t off : {0u, 1u, 3u}) {
          const std::size_t ld = cols + off + 2;
          const auto m = randv(rows * ld, rng);
          const auto v = randv(cols, rng);
          const auto g = randv(rows, rng);
          const MatView view{m.data(), rows, ld, off, cols};

          std::vector<double> a(rows), b(rows);
          s.matvec(view, v.data(), a.data());
          k.matvec(view, v.data(), b.data());
          CHECK(bits_equal(a, b));

          std::vector<double> ta = randv(cols, rng), tb = ta;
          s.matvec_t_acc(view, g.data(), ta.data());
          k.matvec_t_acc(view, g.data(), tb.data());
          CHECK(bits_equal(ta, tb));

          auto oa = m, ob = m;
          s.outer_acc({oa.data(), rows, ld, off, cols}, g.data(), v.data());
          k.outer_acc({ob.data(), rows, ld, off, cols}, g.data(), v.data());
          CHECK(bits_equal(oa, ob));
        }
      }
    }
    for (std::size_t n = 0; n <= 41; ++n) {
      const auto x = randv(n, rng);
      const auto y = randv(n, rng);
      auto ya = y, yb = y;
      s.axpy(n, 0.37, x.data(), ya.data());
      k.axpy(n, 0.37, x.data(), yb.data());
      CHECK(bits_equal(ya, yb));
      std::vector<double> ha(n), hb(n), aa(n), ab(n);
      s.hadamard(n, x.data(), y.data(), ha.data());
      k.hadamard(n, x.data(), y.data(), hb.data());
      CHECK(bits_equal(ha, hb));
      s.add(n, x.data(), y.data(), aa.data());
      k.add(n, x.data(), y.data(), ab.data());
      CHECK(bits_equal(aa, ab));
    }
  }
}

TEST_CASE("backend selection") {
  CHECK(select(Backend::Scalar));
  CHECK(active().backend == Backend::Scalar);
  if (cpu_supports(Backend::Avx2)) {
    CHECK(select(Backend::Avx2));
    CHECK(active().name == "avx2");
  }
  CHECK(backend_name(Backend::Neon) == "neon");
}
