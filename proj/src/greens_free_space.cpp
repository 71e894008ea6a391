#include "purcell/greens_free_space.hpp"

#include <cmath>

namespace purcell {

DyadicTerms dyadic_terms_series(double x) {
    const double z = x * x;
    // Coefficients through x^12 (remainder below 1e-16 for x < 0.5).
    const double a = 2.0 / 3.0 +
                     z * (-2.0 / 15.0 +
                          z * (1.0 / 140.0 +
                               z * (-1.0 / 5670.0 +
                                    z * (1.0 / 399168.0 + z * (-1.0 / 43243200.0 + z * (1.0 / 6671808000.0))))));
    const double b =
        z * (1.0 / 15.0 +
             z * (-1.0 / 210.0 +
                  z * (1.0 / 7560.0 + z * (-1.0 / 498960.0 + z * (1.0 / 51891840.0 + z * (-1.0 / 7783776000.0))))));
    return {a, b};
}

DyadicTerms dyadic_terms_closed_form(double x) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double inv3 = inv2 * inv;
    return {s * inv + c * inv2 - s * inv3, -s * inv - 3.0 * c * inv2 + 3.0 * s * inv3};
}

DyadicTerms dyadic_terms(double x) {
    return x < kTaylorThreshold ? dyadic_terms_series(x) : dyadic_terms_closed_form(x);
}

HomogeneousGreens::HomogeneousGreens(double n) : n_(n) {
    if (!(n >= 1.0) || !std::isfinite(n))
        throw InvalidArgument("homogeneous medium index must be >= 1");
}

PairGeometry pair_geometry(const PolarizedPoint& a, const PolarizedPoint& b) {
    const Position d = b.position - a.position;
    const double r = norm(d);
    const double cpar = a.orientation.dot(b.orientation);
    if (r == 0.0)
        return {0.0, cpar, 0.0};
    const double crr = a.orientation.dot(d) * b.orientation.dot(d) / (r * r);
    return {r, cpar, crr};
}

double im_g_projected(const HomogeneousGreens& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    const double kappa = env.index() * k.value();
    const PairGeometry g = pair_geometry(a, b);
    const DyadicTerms t = dyadic_terms(kappa * g.separation);
    return kappa / (4.0 * kPi) * (t.a * g.cpar + t.b * g.crr);
}

double cdos(const HomogeneousGreens& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    return 2.0 * k.value() / kPi * im_g_projected(env, a, b, k);
}

} // namespace purcell
