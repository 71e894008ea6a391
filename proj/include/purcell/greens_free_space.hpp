#pragma once

// Analytic imaginary part of the homogeneous-medium dyadic Green's function.
//
// With kappa = n k and x = kappa R,
//   Im[u_a . G(r_a, r_b) u_b] = kappa/(4 pi) [A(x) (u_a.u_b) + B(x) (u_a.R^)(u_b.R^)]
//   A(x) = sin x/x + cos x/x^2 - sin x/x^3
//   B(x) = -sin x/x - 3 cos x/x^2 + 3 sin x/x^3
// Below kTaylorThreshold both are evaluated from their power series, which
// avoids the 1/x^3 cancellation of the closed form.

#include "purcell/core.hpp"

namespace purcell {

inline constexpr double kTaylorThreshold = 0.5;

struct DyadicTerms {
    double a;  // transverse, multiplies u_a.u_b
    double b;  // multiplies (u_a.R^)(u_b.R^)
};

DyadicTerms dyadic_terms(double x);
DyadicTerms dyadic_terms_series(double x);
DyadicTerms dyadic_terms_closed_form(double x);

class HomogeneousGreens {
public:
    explicit HomogeneousGreens(double n = 1.0);

    double index() const { return n_; }

    bool operator==(const HomogeneousGreens&) const = default;

private:
    double n_;
};

double im_g_projected(const HomogeneousGreens& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

// (2k/pi) Im[u_a . G u_b]; equals free_space_ldos(k, n) when a == b.
double cdos(const HomogeneousGreens& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

// k-independent geometry of a dipole pair: separation and the two
// orientation projections entering A and B.
struct PairGeometry {
    double separation;
    double cpar;  // u_a . u_b
    double crr;   // (u_a . R^)(u_b . R^), zero at coincidence
};

PairGeometry pair_geometry(const PolarizedPoint& a, const PolarizedPoint& b);

} // namespace purcell
