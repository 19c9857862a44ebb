// SPDX-License-Identifier: Apache-2.0
#include "agc/numcore/kernels.hpp"

namespace agc::numcore::kernels {
namespace {

void matvec_scalar(MatView m, const double* v, double* out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
      acc += row[c] * v[c];
    }
    out[r] = acc;
  }
}

void matvec_t_acc_scalar(MatView m, const double* g, double* out) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data + r * m.ld + m.col_offset;
    const double gr = g[r];
    for (std::size_t c = 0; c < m.cols; ++c) {
      out[c] += row[c] * gr;
    }
  }
}

void outer_acc_scalar(MutMatView m, const double* g, const double* v) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = m.data + r * m.ld + m.col_offset;
    const double gr = g[r];
    for (std::size_t c = 0; c < m.cols; ++c) {
      row[c] += gr * v[c];
    }
  }
}

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void hadamard_scalar(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void add_scalar(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::Scalar,    "scalar",        &matvec_scalar,
                                 &matvec_t_acc_scalar, &outer_acc_scalar, &axpy_scalar,
                                 &hadamard_scalar,   &add_scalar};
  return table;
}

}  // namespace agc::numcore::kernels
