#include "fluidc/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)
#include <arm_neon.h>
#define FLUIDC_HAVE_NEON 1
#else
#define FLUIDC_HAVE_NEON 0
#endif

#if defined(__x86_64__) || defined(_M_X64)
#define FLUIDC_X86 1
#else
#define FLUIDC_X86 0
#endif

namespace fluidc::kernels {

namespace detail {

void gather_u32_scalar(const std::uint32_t* table, const std::uint32_t* idx,
                       std::size_t n, std::uint32_t* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = table[idx[i]];
}

std::size_t count_eq_u32_scalar(const std::uint32_t* vals, std::size_t n,
                                std::uint32_t target) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += vals[i] == target;
  return count;
}

std::size_t count_gather_eq_u32_scalar(const std::uint32_t* table,
                                       const std::uint32_t* idx, std::size_t n,
                                       std::uint32_t target) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += table[idx[i]] == target;
  return count;
}

#if FLUIDC_X86
// Defined in kernels_avx2.cpp, compiled with -mavx2.
void gather_u32_avx2(const std::uint32_t* table, const std::uint32_t* idx,
                     std::size_t n, std::uint32_t* out);
std::size_t count_eq_u32_avx2(const std::uint32_t* vals, std::size_t n,
                              std::uint32_t target);
std::size_t count_gather_eq_u32_avx2(const std::uint32_t* table,
                                     const std::uint32_t* idx, std::size_t n,
                                     std::uint32_t target);
#endif

#if FLUIDC_HAVE_NEON
// NEON has no gather instruction; only the contiguous compare kernel is
// vectorized, the indexed kernels stay scalar on ARM.
std::size_t count_eq_u32_neon(const std::uint32_t* vals, std::size_t n,
                              std::uint32_t target) {
  const uint32x4_t t = vdupq_n_u32(target);
  uint32x4_t acc = vdupq_n_u32(0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t v = vld1q_u32(vals + i);
    // vceqq yields all-ones (0xffffffff) per matching lane; subtract to add 1
    acc = vsubq_u32(acc, vceqq_u32(v, t));
  }
  std::size_t count = vaddvq_u32(acc);
  for (; i < n; ++i) count += vals[i] == target;
  return count;
}
#endif

}  // namespace detail

GatherFn gather_u32 = detail::gather_u32_scalar;
CountEqFn count_eq_u32 = detail::count_eq_u32_scalar;
CountGatherEqFn count_gather_eq_u32 = detail::count_gather_eq_u32_scalar;

namespace {
Backend active_backend = Backend::scalar;
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if FLUIDC_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
      return FLUIDC_HAVE_NEON != 0;
  }
  return false;
}

bool select(Backend backend) {
  if (!available(backend)) return false;
  switch (backend) {
    case Backend::scalar:
      gather_u32 = detail::gather_u32_scalar;
      count_eq_u32 = detail::count_eq_u32_scalar;
      count_gather_eq_u32 = detail::count_gather_eq_u32_scalar;
      break;
    case Backend::avx2:
#if FLUIDC_X86
      gather_u32 = detail::gather_u32_avx2;
      count_eq_u32 = detail::count_eq_u32_avx2;
      count_gather_eq_u32 = detail::count_gather_eq_u32_avx2;
#endif
      break;
    case Backend::neon:
#if FLUIDC_HAVE_NEON
      gather_u32 = detail::gather_u32_scalar;
      count_eq_u32 = detail::count_eq_u32_neon;
      count_gather_eq_u32 = detail::count_gather_eq_u32_scalar;
#endif
      break;
  }
  active_backend = backend;
  return true;
}

void select_best() {
  if (select(Backend::avx2)) return;
  if (select(Backend::neon)) return;
  select(Backend::scalar);
}

Backend active() { return active_backend; }

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

namespace {
struct DispatchInit {
  DispatchInit() { select_best(); }
};
const DispatchInit dispatch_init;
}  // namespace

}  // namespace fluidc::kernels
