#pragma once

// Data-parallel inner loops of the CDOS double sum.
//
// Every kernel has a scalar reference and, where the build and CPU allow it,
// an AVX2+FMA variant. The variant is chosen once per process, so results
// are reproducible run to run regardless of how work is split across threads.
// PURCELL_SIMD=scalar|avx2|auto overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace purcell::kernels {

// out[j] = A(kappa R[j]) * cpar[j] + B(kappa R[j]) * crr[j]
using DyadicRowFn = void (*)(double kappa, std::span<const double> separation, std::span<const double> cpar,
                             std::span<const double> crr, std::span<double> out);

// out[j] += alpha * xr[j] + beta * xi[j]
using AccumulateReImFn = void (*)(double alpha, double beta, std::span<const double> xr, std::span<const double> xi,
                                  std::span<double> out);

// sum_j (wr * vr[j] + wi * vi[j]) * row[j], i.e. sum_j Re(conj(w) v_j) row[j]
using HermitianRowFn = double (*)(double wr, double wi, std::span<const double> vr, std::span<const double> vi,
                                  std::span<const double> row);

struct KernelTable {
    std::string_view name;
    DyadicRowFn dyadic_row;
    AccumulateReImFn accumulate_re_im;
    HermitianRowFn hermitian_row;
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 translation unit is not built or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// Selected once on first use.
const KernelTable& active_kernels();

} // namespace purcell::kernels
