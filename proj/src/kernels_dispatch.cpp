#include <cstdlib>
#include <string_view>

#include "isingql/kernels.hpp"

namespace isingql::kernels {

#if defined(ISINGQL_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

const KernelTable* avx2_table() {
#if defined(ISINGQL_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* table = [] {
    const char* env = std::getenv("ISINGQL_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
    const KernelTable* simd = avx2_table();
    return simd != nullptr ? simd : &scalar_table();
  }();
  return *table;
}

}  // namespace isingql::kernels
