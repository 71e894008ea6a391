#pragma once

// Two-quasinormal-mode Green's function for coupled cavities with unbalanced
// losses, and its exact decomposition into Fano lineshapes.
//
// With complex frequencies w_m = k_m - i gamma_m/2 (c = 1):
//   u_a . G(r_a, r_b, k) u_b = (1/2k) sum_m P_m / (w_m - k),
//   P_m = (u_a . E_m(r_a)) (u_b . E_m(r_b))          (no conjugation)
// and the projected CDOS is (2k/pi) Im of that.
//
// Writing P_m = |P_m| exp(i Phi_m), Phi_m = phi_a + phi_b,
//   (1/pi) Im[P_m / (w_m - k)] = K_m F(k_m, gamma_m, tan(Phi_m/2), k),
//   K_m = -2 |P_m| / (pi gamma_m),
// which is an identity in k, not a fit.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "purcell/core.hpp"
#include "purcell/field_model.hpp"

namespace purcell {

class Qnm {
public:
    Qnm(VectorFieldModel field, Wavenumber k_m, double gamma_m);

    const VectorFieldModel& field() const { return field_; }
    Wavenumber resonance() const { return k_m_; }
    double damping() const { return gamma_m_; }
    Complex complex_frequency() const { return {k_m_.value(), -0.5 * gamma_m_}; }

private:
    VectorFieldModel field_;
    Wavenumber k_m_;
    double gamma_m_;
};

struct QnmPair {
    Qnm qnm_a;
    Qnm qnm_b;

    std::array<const Qnm*, 2> modes() const { return {&qnm_a, &qnm_b}; }
};

Complex green_qnm_projected(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

double cdos_qnm(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k);

// Fano profile (gamma/2)/(q^2+1) [(q^2-1) gamma/2 + 2q (k-k_m)] / ((k-k_m)^2 + gamma^2/4).
double fano_profile(double k_m, double gamma_m, double q, double k);

// |q| -> infinity limit: unit-peak Lorentzian (gamma^2/4)/((k-k_m)^2 + gamma^2/4).
double fano_profile_lorentzian_limit(double k_m, double gamma_m, double k);

// F with q given as optional; nullopt selects the Lorentzian-limit branch.
double fano_profile(double k_m, double gamma_m, const std::optional<double>& q, double k);

// Principal argument of u . E(r) in (-pi, pi]; UndefinedPhase when |u . E| < 1e-14.
double qnm_phase(const Qnm& qnm, const PolarizedPoint& p);

// tan(phi), or nullopt when |cos phi| < 1e-12 (infinite q).
std::optional<double> tangent_q(double phi);

struct FanoQParams {
    std::optional<double> q1;              // tan(phi1)
    std::optional<double> q2;              // tan(phi2)
    std::optional<double> q12_mean;        // [tan(phi1) + tan(phi2)] / 2
    std::optional<double> q12_half_angle;  // tan((phi1 + phi2) / 2)
};

FanoQParams fano_q_params(double phi1, double phi2);

struct FanoTerm {
    std::string label;
    double k_m = 0.0;
    double gamma_m = 0.0;
    std::optional<double> q;  // nullopt: Lorentzian limit
    double coefficient = 0.0;
    double phase_a = 0.0;
    double phase_b = 0.0;

    double evaluate(double k) const { return coefficient * fano_profile(k_m, gamma_m, q, k); }
};

std::vector<FanoTerm> fano_decompose_cdos(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b);

double evaluate_fano_sum(const std::vector<FanoTerm>& terms, double k);

// How well the arithmetic-mean q12 = [tan(phi_a) + tan(phi_b)]/2 reproduces the
// spectrum when substituted for the half-angle q with the same coefficients.
struct FanoComparisonReport {
    std::vector<std::string> labels;
    std::vector<std::optional<double>> q_half_angle;
    std::vector<std::optional<double>> q_mean;
    double max_rel_error_half_angle = 0.0;
    double max_rel_error_mean = 0.0;
    bool phases_equal = false;  // phi_a == phi_b for every term
};

FanoComparisonReport compare_fano_q_forms(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b,
                                          const std::vector<double>& k_grid);

} // namespace purcell
