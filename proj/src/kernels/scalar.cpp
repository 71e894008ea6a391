#include "purcell/greens_free_space.hpp"
#include "purcell/kernels/kernels.hpp"

namespace purcell::kernels {
namespace {

void dyadic_row_scalar(double kappa, std::span<const double> separation, std::span<const double> cpar,
                       std::span<const double> crr, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
        const DyadicTerms t = dyadic_terms(kappa * separation[j]);
        out[j] = t.a * cpar[j] + t.b * crr[j];
    }
}

void accumulate_re_im_scalar(double alpha, double beta, std::span<const double> xr, std::span<const double> xi,
                             std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] += alpha * xr[j] + beta * xi[j];
}

double hermitian_row_scalar(double wr, double wi, std::span<const double> vr, std::span<const double> vi,
                            std::span<const double> row) {
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
        acc += (wr * vr[j] + wi * vi[j]) * row[j];
    return acc;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &dyadic_row_scalar, &accumulate_re_im_scalar, &hermitian_row_scalar};
    return table;
}

} // namespace purcell::kernels
