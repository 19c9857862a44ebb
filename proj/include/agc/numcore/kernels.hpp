// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner-loop kernels behind the tensor ops.
//
// Every backend evaluates each output element with the same sequence of
// multiplies and adds as the scalar reference, so all backends are
// bit-identical. Vector backends gain width by computing several output
// elements at once, never by reassociating a sum.

#include <cstddef>
#include <optional>
#include <string_view>

namespace agc::numcore::kernels {

enum class Backend { Scalar, Avx2, Neon };

/// Column-windowed view of a row-major matrix: element (r, c) is
/// data[r * ld + col_offset + c] for r < rows, c < cols.
struct MatView {
  const double* data;
  std::size_t rows;
  std::size_t ld;
  std::size_t col_offset;
  std::size_t cols;
};

struct MutMatView {
  double* data;
  std::size_t rows;
  std::size_t ld;
  std::size_t col_offset;
  std::size_t cols;
};

struct KernelTable {
  Backend backend;
  std::string_view name;
  /// out[r] = sum_c m(r,c) * v[c], summed in increasing c.
  void (*matvec)(MatView m, const double* v, double* out);
  /// out[c] += m(r,c) * g[r] for r = 0, 1, ... in order.
  void (*matvec_t_acc)(MatView m, const double* g, double* out);
  /// m(r,c) += g[r] * v[c].
  void (*outer_acc)(MutMatView m, const double* g, const double* v);
  /// y[i] += a * x[i].
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  /// out[i] = a[i] * b[i].
  void (*hadamard)(std::size_t n, const double* a, const double* b, double* out);
  /// out[i] = a[i] + b[i].
  void (*add)(std::size_t n, const double* a, const double* b, double* out);
};

const KernelTable& scalar_table();
/// Empty when the backend was not compiled for this architecture.
std::optional<KernelTable> avx2_table();
std::optional<KernelTable> neon_table();

bool cpu_supports(Backend b);

/// The table in use. Chosen on first call: the `AGC_KERNELS` environment
/// variable (scalar|avx2|neon) if set and supported, else the widest
/// backend the CPU supports.
const KernelTable& active();

/// Force a backend (tests, benchmarks). Returns false if unsupported.
bool select(Backend b);

std::string_view backend_name(Backend b);

}  // namespace agc::numcore::kernels
