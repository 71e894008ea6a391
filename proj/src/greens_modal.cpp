#include "purcell/greens_modal.hpp"

#include <cmath>

namespace purcell {

LossyMode::LossyMode(VectorFieldModel field, Wavenumber k_m, double gamma_m)
    : field_(std::move(field)), k_m_(k_m), gamma_m_(gamma_m) {
    if (!(gamma_m > 0.0) || !std::isfinite(gamma_m))
        throw InvalidArgument("mode damping rate must be positive and finite");
}

ModeSet::ModeSet(std::vector<LossyMode> modes) : modes_(std::move(modes)) {
    if (modes_.empty())
        throw InvalidArgument("mode set must contain at least one mode");
}

double modal_lorentzian_weight(const LossyMode& mode, Wavenumber k) {
    const double g = mode.damping();
    const double detuning = k.value() - mode.resonance().value();
    return g / (2.0 * kPi) / (detuning * detuning + 0.25 * g * g);
}

double cdos_modal(const ModeSet& modes, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    double total = 0.0;
    for (const auto& mode : modes.modes()) {
        const Complex pa = a.orientation.project(field_at(mode.field(), a.position));
        const Complex pb = b.orientation.project(field_at(mode.field(), b.position));
        // Re[pa conj(pb)] written out so that swapping a and b is bit-exact.
        const double overlap = pa.real() * pb.real() + pa.imag() * pb.imag();
        total += modal_lorentzian_weight(mode, k) * overlap;
    }
    return total;
}

LossyMode surrogate_l3(const AnalyticSurrogateParams& params, Wavenumber k_m, double gamma_m) {
    return LossyMode(AnalyticSurrogate(params), k_m, gamma_m);
}

LossyMode default_surrogate_l3() {
    const Wavenumber km = wavelength_to_k(kL3WavelengthNm);
    return surrogate_l3(AnalyticSurrogateParams{}, km, km.value() / kL3QualityFactor);
}

} // namespace purcell
