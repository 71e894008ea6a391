#include <cstdlib>
#include <string>

#include "purcell/kernels/kernels.hpp"

namespace purcell::kernels {

#if PURCELL_HAVE_AVX2
const KernelTable& avx2_kernel_table();
#endif

bool cpu_supports_avx2() {
#if PURCELL_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* avx2_kernels() {
#if PURCELL_HAVE_AVX2
    if (cpu_supports_avx2())
        return &avx2_kernel_table();
#endif
    return nullptr;
}

namespace {

const KernelTable& select_kernels() {
    const char* env = std::getenv("PURCELL_SIMD");
    const std::string choice = env ? env : "auto";
    if (choice == "scalar")
        return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels())
        return *avx2;
    return scalar_kernels();
}

} // namespace

const KernelTable& active_kernels() {
    static const KernelTable& table = select_kernels();
    return table;
}

} // namespace purcell::kernels
