#pragma once

// Mode-field models e_m(r): an analytic stand-in for a photonic-crystal
// cavity mode, or a complex vector field sampled on a regular grid (e.g. an
// FDTD export) and interpolated multilinearly.

#include <array>
#include <cstddef>
#include <filesystem>
#include <variant>
#include <vector>

#include "purcell/core.hpp"

namespace purcell {

// Field = amplitude * cos(pi x'/(2 x0)) * exp(-x'^2/(2 sx^2) - y'^2/(2 sy^2)) * polarization,
// with x' = x - center.x, y' = y - center.y; z is ignored.
struct AnalyticSurrogateParams {
    double sign_change_half_width = 160.0;  // x0, nm
    double sigma_x = 400.0;                 // nm
    double sigma_y = 120.0;                 // nm
    Orientation polarization = Orientation::y_axis();
    Complex amplitude{1.0, 0.0};
    Position center{};

    void validate() const;
};

class AnalyticSurrogate {
public:
    explicit AnalyticSurrogate(AnalyticSurrogateParams params);

    const AnalyticSurrogateParams& params() const { return params_; }
    ComplexVec3 at(const Position& r) const;

private:
    AnalyticSurrogateParams params_;
};

// Regular grid of complex 3-vectors, x-fastest storage. A 2D grid (nz absent)
// ignores the z coordinate of queries.
class GridField {
public:
    GridField(std::vector<std::size_t> dims, std::array<double, 3> origin, std::array<double, 3> spacing,
              std::vector<ComplexVec3> samples);

    std::size_t rank() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::array<double, 3>& origin() const { return origin_; }
    const std::array<double, 3>& spacing() const { return spacing_; }
    const std::vector<ComplexVec3>& samples() const { return samples_; }

    const ComplexVec3& node(std::size_t i, std::size_t j, std::size_t k = 0) const;

    // Multilinear interpolation; throws OutOfDomain outside the grid.
    ComplexVec3 at(const Position& r) const;

private:
    std::vector<std::size_t> dims_;
    std::array<double, 3> origin_;
    std::array<double, 3> spacing_;
    std::vector<ComplexVec3> samples_;
};

using VectorFieldModel = std::variant<AnalyticSurrogate, GridField>;

ComplexVec3 field_at(const VectorFieldModel& model, const Position& r);

// Grid field text format:
//   dims nx ny [nz]
//   origin x y [z]
//   spacing dx dy [dz]
//   components 3
//   <nx*ny*nz lines: Re Ex Im Ex Re Ey Im Ey Re Ez Im Ez>   (x fastest)
// Blank lines and lines starting with '#' are skipped.
GridField load_grid_field(const std::filesystem::path& path);
GridField parse_grid_field(std::string_view text, const std::string& source_name = "<memory>");
void write_grid_field(const GridField& field, const std::filesystem::path& path);
std::string format_grid_field(const GridField& field);

} // namespace purcell
