#include "ipdw/simd/kernels.hpp"

#include "ipdw/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ipdw::simd {

#ifndef IPDW_HAVE_AVX2
const Kernels *avx2_kernels() { return nullptr; }
#endif
#ifndef IPDW_HAVE_NEON
const Kernels *neon_kernels() { return nullptr; }
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return "scalar";
  case Isa::Avx2:
    return "avx2";
  case Isa::Neon:
    return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return true;
  case Isa::Avx2:
#if defined(IPDW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  case Isa::Neon:
#if defined(IPDW_HAVE_NEON)
    return true; // baseline on AArch64
#else
    return false;
#endif
  }
  return false;
}

namespace {

const Kernels *table_for(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return &scalar_kernels();
  case Isa::Avx2:
    return avx2_kernels();
  case Isa::Neon:
    return neon_kernels();
  }
  return nullptr;
}

const Kernels *detect() {
  if (const char *env = std::getenv("IPDW_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (want == to_string(isa) && isa_supported(isa))
        return table_for(isa);
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (isa_supported(isa))
      return table_for(isa);
  return &scalar_kernels();
}

std::atomic<const Kernels *> &current() {
  static std::atomic<const Kernels *> table{detect()};
  return table;
}

} // namespace

const Kernels &active() { return *current().load(std::memory_order_acquire); }

void force_isa(Isa isa) {
  if (!isa_supported(isa))
    throw ArgumentError("instruction set " + std::string(to_string(isa)) +
                        " is not available on this machine");
  current().store(table_for(isa), std::memory_order_release);
}

} // namespace ipdw::simd
