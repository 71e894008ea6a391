// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and only entered after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "purcell/greens_free_space.hpp"
#include "purcell/kernels/kernels.hpp"

namespace purcell::kernels {
namespace {

// Cody-Waite split of pi/2 (Cephes DP1..DP3 doubled); exact products for |q| < 2^26.
constexpr double kPio2Hi = 1.57079625129699707031e+00;
constexpr double kPio2Mid = 7.54978941586159635335e-08;
constexpr double kPio2Lo = 5.39030285815811905290e-15;
constexpr double kTwoOverPi = 0.63661977236758134308;

// Beyond this the three-term reduction loses accuracy; such blocks go scalar.
constexpr double kMaxReducedArgument = 1.0e6;

inline __m256d poly_sin(__m256d z) {
    __m256d p = _mm256_set1_pd(1.58962301576546568060e-10);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-2.50507477628578072866e-8));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(2.75573136213857245213e-6));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.98412698295895385996e-4));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(8.33333333332211858878e-3));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.66666666666666307295e-1));
    return p;
}

inline __m256d poly_cos(__m256d z) {
    __m256d p = _mm256_set1_pd(-1.13585365213876817300e-11);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(2.08757008419747316778e-9));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-2.75573141792967388112e-7));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(2.48015872888517045348e-5));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.38888888888730564116e-3));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(4.16666666666665929218e-2));
    return p;
}

// sin and cos of four non-negative arguments below kMaxReducedArgument.
inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);
    const __m256d z = _mm256_mul_pd(r, r);

    const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly_sin(z), r);
    const __m256d half_z = _mm256_mul_pd(z, _mm256_set1_pd(0.5));
    const __m256d cr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly_cos(z), _mm256_sub_pd(_mm256_set1_pd(1.0), half_z));

    // Quadrant bits from the integer-valued q (1.5 * 2^52 shift).
    const __m256i qi = _mm256_castpd_si256(_mm256_add_pd(q, _mm256_set1_pd(6755399441055744.0)));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
    const __m256i sin_neg = _mm256_slli_epi64(_mm256_and_si256(qi, two), 62);
    const __m256i cos_neg = _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), 62);

    s = _mm256_xor_pd(_mm256_blendv_pd(sr, cr, swap), _mm256_castsi256_pd(sin_neg));
    c = _mm256_xor_pd(_mm256_blendv_pd(cr, sr, swap), _mm256_castsi256_pd(cos_neg));
}

inline __m256d horner(__m256d z, std::initializer_list<double> coeffs) {
    auto it = coeffs.begin();
    __m256d p = _mm256_set1_pd(*it++);
    for (; it != coeffs.end(); ++it)
        p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(*it));
    return p;
}

void dyadic_row_avx2(double kappa, std::span<const double> separation, std::span<const double> cpar,
                     std::span<const double> crr, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d vkappa = _mm256_set1_pd(kappa);
    const __m256d threshold = _mm256_set1_pd(kTaylorThreshold);
    const __m256d limit = _mm256_set1_pd(kMaxReducedArgument);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d three = _mm256_set1_pd(3.0);

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d x = _mm256_mul_pd(vkappa, _mm256_loadu_pd(separation.data() + j));
        if (_mm256_movemask_pd(_mm256_cmp_pd(x, limit, _CMP_GE_OQ)) != 0) {
            for (std::size_t l = j; l < j + 4; ++l) {
                const DyadicTerms t = dyadic_terms(kappa * separation[l]);
                out[l] = t.a * cpar[l] + t.b * crr[l];
            }
            continue;
        }

        __m256d s, c;
        sincos4(x, s, c);
        const __m256d small = _mm256_cmp_pd(x, threshold, _CMP_LT_OQ);
        // Avoid 1/0 in lanes that take the series branch.
        const __m256d xs = _mm256_blendv_pd(x, one, small);
        const __m256d inv = _mm256_div_pd(one, xs);
        const __m256d inv2 = _mm256_mul_pd(inv, inv);
        const __m256d inv3 = _mm256_mul_pd(inv2, inv);
        const __m256d s_inv3 = _mm256_mul_pd(s, inv3);
        const __m256d c_inv2 = _mm256_mul_pd(c, inv2);
        const __m256d s_inv = _mm256_mul_pd(s, inv);
        const __m256d a_direct = _mm256_sub_pd(_mm256_add_pd(s_inv, c_inv2), s_inv3);
        const __m256d b_direct =
            _mm256_fmadd_pd(three, s_inv3, _mm256_fnmadd_pd(three, c_inv2, _mm256_sub_pd(_mm256_setzero_pd(), s_inv)));

        const __m256d z = _mm256_mul_pd(x, x);
        const __m256d a_series =
            horner(z, {1.0 / 6671808000.0, -1.0 / 43243200.0, 1.0 / 399168.0, -1.0 / 5670.0, 1.0 / 140.0,
                       -2.0 / 15.0, 2.0 / 3.0});
        const __m256d b_series = _mm256_mul_pd(
            z, horner(z, {-1.0 / 7783776000.0, 1.0 / 51891840.0, -1.0 / 498960.0, 1.0 / 7560.0, -1.0 / 210.0,
                          1.0 / 15.0}));

        const __m256d a = _mm256_blendv_pd(a_direct, a_series, small);
        const __m256d b = _mm256_blendv_pd(b_direct, b_series, small);
        const __m256d res =
            _mm256_fmadd_pd(a, _mm256_loadu_pd(cpar.data() + j), _mm256_mul_pd(b, _mm256_loadu_pd(crr.data() + j)));
        _mm256_storeu_pd(out.data() + j, res);
    }
    for (; j < n; ++j) {
        const DyadicTerms t = dyadic_terms(kappa * separation[j]);
        out[j] = t.a * cpar[j] + t.b * crr[j];
    }
}

void accumulate_re_im_avx2(double alpha, double beta, std::span<const double> xr, std::span<const double> xi,
                           std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_loadu_pd(out.data() + j);
        acc = _mm256_fmadd_pd(va, _mm256_loadu_pd(xr.data() + j), acc);
        acc = _mm256_fmadd_pd(vb, _mm256_loadu_pd(xi.data() + j), acc);
        _mm256_storeu_pd(out.data() + j, acc);
    }
    for (; j < n; ++j)
        out[j] += alpha * xr[j] + beta * xi[j];
}

double hermitian_row_avx2(double wr, double wi, std::span<const double> vr, std::span<const double> vi,
                          std::span<const double> row) {
    const std::size_t n = row.size();
    const __m256d vwr = _mm256_set1_pd(wr);
    const __m256d vwi = _mm256_set1_pd(wi);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d coef =
            _mm256_fmadd_pd(vwr, _mm256_loadu_pd(vr.data() + j), _mm256_mul_pd(vwi, _mm256_loadu_pd(vi.data() + j)));
        acc = _mm256_fmadd_pd(coef, _mm256_loadu_pd(row.data() + j), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; j < n; ++j)
        total += (wr * vr[j] + wi * vi[j]) * row[j];
    return total;
}

} // namespace

const KernelTable& avx2_kernel_table() {
    static const KernelTable table{"avx2", &dyadic_row_avx2, &accumulate_re_im_avx2, &hermitian_row_avx2};
    return table;
}

} // namespace purcell::kernels
