// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace agc::numcore::kernels {

#if defined(__aarch64__)
namespace {

// Two rows per pass; vzip transposes a 2x2 block into column pairs.
// vmulq + vaddq (never vfmaq) keeps rounding identical to the scalar path.
void matvec_neon(MatView m, const double* v, double* out) {
  std::size_t r = 0;
  for (; r + 2 <= m.rows; r += 2) {
    const double* p0 = m.data + (r + 0) * m.ld + m.col_offset;
    const double* p1 = m.data + (r + 1) * m.ld + m.col_offset;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t c = 0;
    for (; c + 2 <= m.cols; c += 2) {
      const float64x2_t a0 = vld1q_f64(p0 + c);
      const float64x2_t a1 = vld1q_f64(p1 + c);
      const float64x2_t col0 = vzip1q_f64(a0, a1);
      const float64x2_t col1 = vzip2q_f64(a0, a1);
      acc = vaddq_f64(acc, vmulq_f64(col0, vdupq_n_f64(v[c + 0])));
      acc = vaddq_f64(acc, vmulq_f64(col1, vdupq_n_f64(v[c + 1])));
    }
    for (; c < m.cols; ++c) {
      const double pair[2] = {p0[c], p1[c]};
      acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(pair), vdupq_n_f64(v[c])));
    }
    vst1q_f64(out + r, acc);
  }
  for (; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
}

void matvec_t_acc_neon(MatView m, const double* g, double* out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    const float64x2_t gr = vdupq_n_f64(g[r]);
    std::size_t c = 0;
    for (; c + 2 <= m.cols; c += 2) {
      vst1q_f64(out + c, vaddq_f64(vld1q_f64(out + c), vmulq_f64(vld1q_f64(row + c), gr)));
    }
    for (; c < m.cols; ++c) out[c] += row[c] * g[r];
  }
}

void outer_acc_neon(MutMatView m, const double* g, const double* v) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = m.data + r * m.ld + m.col_offset;
    const float64x2_t gr = vdupq_n_f64(g[r]);
    std::size_t c = 0;
    for (; c + 2 <= m.cols; c += 2) {
      vst1q_f64(row + c, vaddq_f64(vld1q_f64(row + c), vmulq_f64(gr, vld1q_f64(v + c))));
    }
    for (; c < m.cols; ++c) row[c] += g[r] * v[c];
  }
}

void axpy_neon(std::size_t n, double a, const double* x, double* y) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(av, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void hadamard_neon(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void add_neon(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

}  // namespace

std::optional<KernelTable> neon_table() {
  return KernelTable{Backend::Neon,  "neon",          &matvec_neon, &matvec_t_acc_neon,
                     &outer_acc_neon, &axpy_neon, &hadamard_neon, &add_neon};
}

#else

std::optional<KernelTable> neon_table() { return std::nullopt; }

#endif

}  // namespace agc::numcore::kernels
