// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define AGC_HAVE_AVX2_KERNELS 1
#define AGC_AVX2 __attribute__((target("avx2")))
#endif

namespace agc::numcore::kernels {

#ifdef AGC_HAVE_AVX2_KERNELS
namespace {

// Four rows per pass; a 4x4 in-register transpose turns four row loads into
// four column vectors so each lane accumulates its own row in column order.
AGC_AVX2 void matvec_avx2(MatView m, const double* v, double* out) {
  std::size_t r = 0;
  for (; r + 4 <= m.rows; r += 4) {
    const double* p0 = m.data + (r + 0) * m.ld + m.col_offset;
    const double* p1 = m.data + (r + 1) * m.ld + m.col_offset;
    const double* p2 = m.data + (r + 2) * m.ld + m.col_offset;
    const double* p3 = m.data + (r + 3) * m.ld + m.col_offset;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= m.cols; c += 4) {
      const __m256d a0 = _mm256_loadu_pd(p0 + c);
      const __m256d a1 = _mm256_loadu_pd(p1 + c);
      const __m256d a2 = _mm256_loadu_pd(p2 + c);
      const __m256d a3 = _mm256_loadu_pd(p3 + c);
      const __m256d t0 = _mm256_unpacklo_pd(a0, a1);
      const __m256d t1 = _mm256_unpackhi_pd(a0, a1);
      const __m256d t2 = _mm256_unpacklo_pd(a2, a3);
      const __m256d t3 = _mm256_unpackhi_pd(a2, a3);
      const __m256d col0 = _mm256_permute2f128_pd(t0, t2, 0x20);
      const __m256d col1 = _mm256_permute2f128_pd(t1, t3, 0x20);
      const __m256d col2 = _mm256_permute2f128_pd(t0, t2, 0x31);
      const __m256d col3 = _mm256_permute2f128_pd(t1, t3, 0x31);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col0, _mm256_set1_pd(v[c + 0])));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col1, _mm256_set1_pd(v[c + 1])));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col2, _mm256_set1_pd(v[c + 2])));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col3, _mm256_set1_pd(v[c + 3])));
    }
    for (; c < m.cols; ++c) {
      const __m256d col = _mm256_set_pd(p3[c], p2[c], p1[c], p0[c]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col, _mm256_set1_pd(v[c])));
    }
    _mm256_storeu_pd(out + r, acc);
  }
  for (; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
}

AGC_AVX2 void matvec_t_acc_avx2(MatView m, const double* g, double* out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    const __m256d gr = _mm256_set1_pd(g[r]);
    std::size_t c = 0;
    for (; c + 4 <= m.cols; c += 4) {
      const __m256d o = _mm256_loadu_pd(out + c);
      _mm256_storeu_pd(out + c, _mm256_add_pd(o, _mm256_mul_pd(_mm256_loadu_pd(row + c), gr)));
    }
    for (; c < m.cols; ++c) out[c] += row[c] * g[r];
  }
}

AGC_AVX2 void outer_acc_avx2(MutMatView m, const double* g, const double* v) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = m.data + r * m.ld + m.col_offset;
    const __m256d gr = _mm256_set1_pd(g[r]);
    std::size_t c = 0;
    for (; c + 4 <= m.cols; c += 4) {
      const __m256d o = _mm256_loadu_pd(row + c);
      _mm256_storeu_pd(row + c, _mm256_add_pd(o, _mm256_mul_pd(gr, _mm256_loadu_pd(v + c))));
    }
    for (; c < m.cols; ++c) row[c] += g[r] * v[c];
  }
}

AGC_AVX2 void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(av, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

AGC_AVX2 void hadamard_avx2(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

AGC_AVX2 void add_avx2(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

}  // namespace

std::optional<KernelTable> avx2_table() {
  return KernelTable{Backend::Avx2,  "avx2",          &matvec_avx2, &matvec_t_acc_avx2,
                     &outer_acc_avx2, &axpy_avx2, &hadamard_avx2, &add_avx2};
}

#else

std::optional<KernelTable> avx2_table() { return std::nullopt; }

#endif

}  // namespace agc::numcore::kernels
