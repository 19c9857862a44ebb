// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string>

#include "agc/numcore/kernels.hpp"

namespace agc::numcore::kernels {
namespace {

std::optional<KernelTable> table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return scalar_table();
    case Backend::Avx2:
      return cpu_supports(Backend::Avx2) ? avx2_table() : std::nullopt;
    case Backend::Neon:
      return cpu_supports(Backend::Neon) ? neon_table() : std::nullopt;
  }
  return std::nullopt;
}

KernelTable detect() {
  if (const char* env = std::getenv("AGC_KERNELS")) {
    const std::string want(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (want == backend_name(b)) {
        if (auto t = table_for(b)) return *t;
      }
    }
  }
  for (Backend b : {Backend::Avx2, Backend::Neon}) {
    if (auto t = table_for(b)) return *t;
  }
  return scalar_table();
}

KernelTable& current() {
  static KernelTable table = detect();
  return table;
}

}  // namespace

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return true;  // mandatory in AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() { return current(); }

bool select(Backend b) {
  auto t = table_for(b);
  if (!t) return false;
  current() = *t;
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace agc::numcore::kernels
