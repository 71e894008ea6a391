#pragma once

// Shared geometric and spectral types.
//
// Unit conventions: lengths in nanometres, c = 1, frequency carried by the
// vacuum wavenumber k = 2*pi/lambda (1/nm). Rates are only ever reported as
// dimensionless ratios, so no SI constants appear anywhere.

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "purcell/errors.hpp"

namespace purcell {

using Complex = std::complex<double>;
using ComplexVec3 = std::array<Complex, 3>;

inline constexpr double kPi = std::numbers::pi;

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Position() = default;
    Position(double x_, double y_, double z_);

    Position operator+(const Position& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Position operator-(const Position& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Position operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Position&) const = default;
};

double norm(const Position& p);

// Unit vector; construction fails unless |u| = 1 within 1e-12.
class Orientation {
public:
    Orientation(double ux, double uy, double uz);

    // Rescales an arbitrary non-zero vector to unit length.
    static Orientation normalized(double ux, double uy, double uz);

    static Orientation x_axis() { return {1.0, 0.0, 0.0}; }
    static Orientation y_axis() { return {0.0, 1.0, 0.0}; }
    static Orientation z_axis() { return {0.0, 0.0, 1.0}; }

    double ux() const { return ux_; }
    double uy() const { return uy_; }
    double uz() const { return uz_; }

    double dot(const Orientation& o) const { return ux_ * o.ux_ + uy_ * o.uy_ + uz_ * o.uz_; }
    double dot(const Position& v) const { return ux_ * v.x + uy_ * v.y + uz_ * v.z; }
    Complex project(const ComplexVec3& field) const { return ux_ * field[0] + uy_ * field[1] + uz_ * field[2]; }

    bool operator==(const Orientation&) const = default;

private:
    double ux_;
    double uy_;
    double uz_;
};

struct PolarizedPoint {
    Position position;
    Orientation orientation;
};

// Vacuum wavenumber, strictly positive.
class Wavenumber {
public:
    explicit Wavenumber(double k);

    double value() const { return k_; }
    double wavelength_nm() const { return 2.0 * kPi / k_; }

    auto operator<=>(const Wavenumber&) const = default;

private:
    double k_;
};

Wavenumber wavelength_to_k(double wavelength_nm);

// Projected LDOS of a homogeneous medium of index n: n k^2 / (3 pi^2).
double free_space_ldos(Wavenumber k, double n = 1.0);

// Ordered frequency grid with one real sample per point.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::vector<double> k_values, std::vector<double> samples);

    const std::vector<double>& k_values() const { return k_; }
    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return k_.size(); }

    std::size_t argmax() const;
    std::size_t argmin() const;

private:
    std::vector<double> k_;
    std::vector<double> samples_;
};

// Throws InvalidArgument unless the grid is strictly ascending and non-empty.
void require_ascending(const std::vector<double>& grid, const char* what);

} // namespace purcell
