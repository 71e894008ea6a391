#pragma once

// Structured environment described by a discrete set of lossy eigenmodes
// (high-Q limit). The projected CDOS is
//
//   rho(a, b, k) = sum_m (gamma_m / 2 pi) Re[(u_a . e_m(r_a)) (u_b . e_m*(r_b))]
//                        / ((k - k_m)^2 + gamma_m^2 / 4)
//
// Mode fields carry whatever normalisation the caller gives them. Only
// single-mode rate ratios are independent of it; for several modes the
// relative amplitudes are the caller's responsibility.

#include <string>
#include <vector>

#include "purcell/core.hpp"
#include "purcell/field_model.hpp"

namespace purcell {

class LossyMode {
public:
    LossyMode(VectorFieldModel field, Wavenumber k_m, double gamma_m);

    const VectorFieldModel& field() const { return field_; }
    Wavenumber resonance() const { return k_m_; }
    double damping() const { return gamma_m_; }
    double quality_factor() const { return k_m_.value() / gamma_m_; }

    // gamma_m > k_m/10: outside the regime where the lossy-mode expansion is trustworthy.
    bool low_q_warning() const { return gamma_m_ > k_m_.value() / 10.0; }

private:
    VectorFieldModel field_;
    Wavenumber k_m_;
    double gamma_m_;
};

class ModeSet {
public:
    explicit ModeSet(std::vector<LossyMode> modes);

    const std::vector<LossyMode>& modes() const { return modes_; }

private:
    std::vector<LossyMode> modes_;
};

// gamma/(2 pi) / ((k - k_m)^2 + gamma^2/4); the weight of Re[...] in the CDOS.
double modal_lorentzian_weight(const LossyMode& mode, Wavenumber k);

double cdos_modal(const ModeSet& modes, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

// Surrogate for the fundamental mode of an L3 photonic-crystal cavity:
// positive central lobe with sign changes at |x - center.x| = x0.
LossyMode surrogate_l3(const AnalyticSurrogateParams& params, Wavenumber k_m, double gamma_m);

// Defaults used throughout the tests and examples: lambda_m = 1270 nm, Q = 2000.
inline constexpr double kL3WavelengthNm = 1270.0;
inline constexpr double kL3QualityFactor = 2000.0;
inline constexpr double kSlabIndex = 3.48;

LossyMode default_surrogate_l3();

} // namespace purcell
