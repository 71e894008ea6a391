#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "purcell/greens_free_space.hpp"
#include "purcell/kernels/kernels.hpp"

using namespace purcell;

namespace {

struct Row {
    std::vector<double> r, cpar, crr, vr, vi;
};

Row random_row(std::size_t n, std::mt19937_64& rng, double r_max) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ru(0.0, r_max);
    Row row;
    for (std::size_t j = 0; j < n; ++j) {
        // Include exact zeros and values near the series/closed-form switch.
        double r = ru(rng);
        if (j % 17 == 0) r = 0.0;
        if (j % 23 == 0) r = kTaylorThreshold / 0.01 * (1.0 + 1e-9 * u(rng));
        row.r.push_back(r);
        row.cpar.push_back(u(rng));
        row.crr.push_back(r == 0.0 ? 0.0 : u(rng));
        row.vr.push_back(u(rng));
        row.vi.push_back(u(rng));
    }
    return row;
}

} // namespace

TEST_CASE("scalar dyadic row matches dyadic_terms") {
    std::mt19937_64 rng(11);
    const Row row = random_row(257, rng, 5e3);
    std::vector<double> out(row.r.size());
    const double kappa = 0.01;
    kernels::scalar_kernels().dyadic_row(kappa, row.r, row.cpar, row.crr, out);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const DyadicTerms t = dyadic_terms(kappa * row.r[j]);
        CHECK(out[j] == t.a * row.cpar[j] + t.b * row.crr[j]);
    }
}

TEST_CASE("AVX2 kernels agree with scalar reference") {
    const kernels::KernelTable* simd = kernels::avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("AVX2 variant unavailable on this build/host; skipped");
        return;
    }
    const kernels::KernelTable& ref = kernels::scalar_kernels();
    std::mt19937_64 rng(12);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 64u, 1001u}) {
        for (double r_max : {1.0, 50.0, 5e3, 1e5}) {
            const Row row = random_row(n, rng, r_max);
            std::vector<double> a(n), b(n);
            for (double kappa : {1e-4, 0.0172, 0.3}) {
                ref.dyadic_row(kappa, row.r, row.cpar, row.crr, a);
                simd->dyadic_row(kappa, row.r, row.cpar, row.crr, b);
                for (std::size_t j = 0; j < n; ++j) {
                    CHECK(std::abs(a[j] - b[j]) <= 1e-13 * (std::abs(row.cpar[j]) + std::abs(row.crr[j])));
                }
            }
            std::vector<double> acc_a(n, 0.25), acc_b(n, 0.25);
            ref.accumulate_re_im(0.7, -1.3, row.vr, row.vi, acc_a);
            simd->accumulate_re_im(0.7, -1.3, row.vr, row.vi, acc_b);
            for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(acc_a[j] - acc_b[j]) <= 1e-15);

            const double ha = ref.hermitian_row(0.4, 0.9, row.vr, row.vi, row.cpar);
            const double hb = simd->hermitian_row(0.4, 0.9, row.vr, row.vi, row.cpar);
            CHECK(std::abs(ha - hb) <= 1e-13 * (1.0 + static_cast<double>(n)));
        }
    }
}

TEST_CASE("active kernel table is one of the known variants") {
    const auto name = kernels::active_kernels().name;
    CHECK((name == "scalar" || name == "avx2"));
    if (!kernels::cpu_supports_avx2()) CHECK(name == "scalar");
}
