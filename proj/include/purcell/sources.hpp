#pragma once

// Coherent extended sources as weighted lists of elementary dipoles.
//
// Weight conventions: a cluster of N mutually coherent dipoles carries
// amplitude p/sqrt(N) per element, so sum |w|^2 = p^2. The reference point
// only labels a source; it never enters a rate.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "purcell/core.hpp"

namespace purcell {

struct DipoleElement {
    PolarizedPoint point;
    Complex weight;
};

class ExtendedSource {
public:
    ExtendedSource(std::vector<DipoleElement> elements, Position reference);

    const std::vector<DipoleElement>& elements() const { return elements_; }
    const Position& reference() const { return reference_; }
    std::size_t size() const { return elements_.size(); }

    // Same source with every weight multiplied by `factor`.
    ExtendedSource scaled(Complex factor) const;

    double total_weight_norm() const;  // sum |w|^2

private:
    std::vector<DipoleElement> elements_;
    Position reference_;
};

ExtendedSource point_source(const PolarizedPoint& p, Complex amplitude);

// Weights p/sqrt(2) and (p/sqrt(2)) e^{i phase}; reference at the midpoint.
ExtendedSource pair_source(const PolarizedPoint& a, const PolarizedPoint& b, double amplitude, double phase);

// N in-phase dipoles equally spaced over a segment of length d centred on
// `center` along `axis`, all oriented along `polarization`, weights p/sqrt(N).
ExtendedSource line_source(const Position& center, const Orientation& axis, const Orientation& polarization, double d,
                           std::size_t n, double amplitude);

// Element count giving spacing <= lambda/(20 n) for a line of length d.
std::size_t default_line_element_count(double d, Wavenumber k, double n);

struct SamplingGrid {
    Position origin;
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::array<std::size_t, 3> counts{1, 1, 1};
};

using DensityFn = std::function<Complex(const Position&)>;
using PolarizationFn = std::function<Orientation(const Position&)>;

// One element per grid cell (at the cell centre) with weight eta(r) dV,
// dV = dx dy dz; cells with zero weight are dropped.
ExtendedSource sampled_source(const DensityFn& density, const PolarizationFn& polarization, const SamplingGrid& grid,
                              const Position& reference);

} // namespace purcell
