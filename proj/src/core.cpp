#include "purcell/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace purcell {

Position::Position(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw InvalidArgument("position components must be finite");
}

double norm(const Position& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

Orientation::Orientation(double ux, double uy, double uz) : ux_(ux), uy_(uy), uz_(uz) {
    const double n = std::sqrt(ux * ux + uy * uy + uz * uz);
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12)
        throw InvalidArgument("orientation must have unit norm (got " + std::to_string(n) + ")");
}

Orientation Orientation::normalized(double ux, double uy, double uz) {
    const double n = std::sqrt(ux * ux + uy * uy + uz * uz);
    if (!std::isfinite(n) || n == 0.0)
        throw InvalidArgument("cannot normalize a zero or non-finite orientation");
    return {ux / n, uy / n, uz / n};
}

Wavenumber::Wavenumber(double k) : k_(k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidArgument("wavenumber must be positive and finite");
}

Wavenumber wavelength_to_k(double wavelength_nm) {
    if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm))
        throw InvalidArgument("wavelength must be positive");
    return Wavenumber(2.0 * kPi / wavelength_nm);
}

double free_space_ldos(Wavenumber k, double n) {
    if (!(n >= 1.0) || !std::isfinite(n))
        throw InvalidArgument("refractive index must be >= 1");
    const double kv = k.value();
    return n * kv * kv / (3.0 * kPi * kPi);
}

void require_ascending(const std::vector<double>& grid, const char* what) {
    if (grid.empty())
        throw InvalidArgument(std::string(what) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw InvalidArgument(std::string(what) + " grid has a non-finite entry at index " + std::to_string(i));
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw InvalidArgument(std::string(what) + " grid is not strictly ascending at index " + std::to_string(i));
    }
}

Spectrum::Spectrum(std::vector<double> k_values, std::vector<double> samples)
    : k_(std::move(k_values)), samples_(std::move(samples)) {
    require_ascending(k_, "spectrum");
    if (k_.size() != samples_.size())
        throw InvalidArgument("spectrum grid and samples differ in length");
}

std::size_t Spectrum::argmax() const {
    return static_cast<std::size_t>(std::max_element(samples_.begin(), samples_.end()) - samples_.begin());
}

std::size_t Spectrum::argmin() const {
    return static_cast<std::size_t>(std::min_element(samples_.begin(), samples_.end()) - samples_.begin());
}

} // namespace purcell
