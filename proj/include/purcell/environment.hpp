#pragma once

// A photonic environment: an optional homogeneous radiative background plus
// an optional structured part (lossy-mode set or QNM pair). A bare modal
// model has zero LDOS away from resonance, so scenario front ends always add
// a background.

#include <optional>
#include <variant>

#include "purcell/greens_free_space.hpp"
#include "purcell/greens_modal.hpp"
#include "purcell/greens_qnm.hpp"

namespace purcell {

using StructuredModel = std::variant<ModeSet, QnmPair>;

class GreensModel {
public:
    static GreensModel homogeneous(double n);
    static GreensModel structured(StructuredModel model);
    static GreensModel composite(double background_index, StructuredModel model);

    const std::optional<HomogeneousGreens>& background() const { return background_; }
    const std::optional<StructuredModel>& structured_part() const { return structured_; }

    // Largest refractive index involved (1 without a background).
    double max_index() const;

private:
    GreensModel(std::optional<HomogeneousGreens> bg, std::optional<StructuredModel> st);

    std::optional<HomogeneousGreens> background_;
    std::optional<StructuredModel> structured_;
};

double cdos(const GreensModel& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

} // namespace purcell
