#include "purcell/sources.hpp"

#include <cmath>

namespace purcell {

ExtendedSource::ExtendedSource(std::vector<DipoleElement> elements, Position reference)
    : elements_(std::move(elements)), reference_(reference) {
    if (elements_.empty())
        throw InvalidArgument("extended source needs at least one element");
    bool any_nonzero = false;
    for (const auto& e : elements_) {
        if (!std::isfinite(e.weight.real()) || !std::isfinite(e.weight.imag()))
            throw InvalidArgument("dipole weight must be finite");
        any_nonzero = any_nonzero || e.weight != Complex{};
    }
    if (!any_nonzero)
        throw InvalidArgument("extended source has only zero weights");
}

ExtendedSource ExtendedSource::scaled(Complex factor) const {
    auto elems = elements_;
    for (auto& e : elems)
        e.weight *= factor;
    return {std::move(elems), reference_};
}

double ExtendedSource::total_weight_norm() const {
    double s = 0.0;
    for (const auto& e : elements_)
        s += std::norm(e.weight);
    return s;
}

ExtendedSource point_source(const PolarizedPoint& p, Complex amplitude) {
    if (amplitude == Complex{})
        throw InvalidArgument("point source amplitude must be non-zero");
    return {{DipoleElement{p, amplitude}}, p.position};
}

ExtendedSource pair_source(const PolarizedPoint& a, const PolarizedPoint& b, double amplitude, double phase) {
    if (!(amplitude > 0.0))
        throw InvalidArgument("pair amplitude must be positive");
    const double w = amplitude / std::sqrt(2.0);
    const Position mid = (a.position + b.position) * 0.5;
    return {{DipoleElement{a, Complex(w, 0.0)}, DipoleElement{b, std::polar(w, phase)}}, mid};
}

ExtendedSource line_source(const Position& center, const Orientation& axis, const Orientation& polarization, double d,
                           std::size_t n, double amplitude) {
    if (n == 0)
        throw InvalidArgument("line source needs at least one element");
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidArgument("line source length must be non-negative");
    if (!(amplitude > 0.0))
        throw InvalidArgument("line source amplitude must be positive");

    const Complex w(amplitude / std::sqrt(static_cast<double>(n)), 0.0);
    std::vector<DipoleElement> elems;
    elems.reserve(n);
    if (n == 1 || d == 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            elems.push_back({{center, polarization}, w});
    } else {
        const double step = d / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = -0.5 * d + step * static_cast<double>(i);
            const Position r{center.x + s * axis.ux(), center.y + s * axis.uy(), center.z + s * axis.uz()};
            elems.push_back({{r, polarization}, w});
        }
    }
    return {std::move(elems), center};
}

std::size_t default_line_element_count(double d, Wavenumber k, double n) {
    if (!(d >= 0.0) || !(n >= 1.0))
        throw InvalidArgument("default element count needs d >= 0 and n >= 1");
    const double max_spacing = k.wavelength_nm() / (20.0 * n);
    return static_cast<std::size_t>(std::ceil(d / max_spacing)) + 1;
}

ExtendedSource sampled_source(const DensityFn& density, const PolarizationFn& polarization, const SamplingGrid& grid,
                              const Position& reference) {
    for (std::size_t a = 0; a < 3; ++a) {
        if (grid.counts[a] == 0)
            throw InvalidArgument("sampling grid needs at least one cell per axis");
        if (!(grid.spacing[a] > 0.0) || !std::isfinite(grid.spacing[a]))
            throw InvalidArgument("sampling grid spacing must be positive");
    }
    const double cell_measure = grid.spacing[0] * grid.spacing[1] * grid.spacing[2];
    std::vector<DipoleElement> elems;
    for (std::size_t k = 0; k < grid.counts[2]; ++k)
        for (std::size_t j = 0; j < grid.counts[1]; ++j)
            for (std::size_t i = 0; i < grid.counts[0]; ++i) {
                const Position r{grid.origin.x + (static_cast<double>(i) + 0.5) * grid.spacing[0],
                                 grid.origin.y + (static_cast<double>(j) + 0.5) * grid.spacing[1],
                                 grid.origin.z + (static_cast<double>(k) + 0.5) * grid.spacing[2]};
                const Complex w = density(r) * cell_measure;
                if (w == Complex{})
                    continue;
                elems.push_back({{r, polarization(r)}, w});
            }
    if (elems.empty())
        throw InvalidArgument("source density vanishes on every grid cell");
    return {std::move(elems), reference};
}

} // namespace purcell
