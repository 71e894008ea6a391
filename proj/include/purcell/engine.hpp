#pragma once

// Normalised decay rate of an extended coherent source:
//
//   Gamma/Gamma_0 = sum_ij conj(w_i) w_j rho_env(P_i, P_j, k)
//                 / sum_ij conj(w_i) w_j rho_ref(P_i, P_j, k)
//
// Both double sums run over the fixed element order, using rho_ij = rho_ji to
// visit each pair once. The reference environment is always explicit.

#include <cstddef>
#include <optional>
#include <vector>

#include "purcell/core.hpp"
#include "purcell/environment.hpp"
#include "purcell/sources.hpp"

namespace purcell {

struct RateResult {
    double gamma_ratio = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double k = 0.0;
};

// A source bound to one environment: k-independent geometry and projected
// mode fields are computed once, then reused for every frequency.
class PreparedSum {
public:
    PreparedSum(const ExtendedSource& src, const GreensModel& env);

    // sum_ij conj(w_i) w_j rho_ij(k)
    double coherent(Wavenumber k) const;
    // sum_i |w_i|^2 rho_ii(k)
    double incoherent(Wavenumber k) const;

private:
    struct ModeProjection {
        std::vector<double> re;
        std::vector<double> im;
        Wavenumber k_m;
        double gamma_m;
        bool qnm;
    };

    double structured_diagonal(const ModeProjection& m, std::size_t i, double k) const;

    std::size_t n_;
    std::vector<double> wr_;
    std::vector<double> wi_;
    std::optional<double> background_index_;
    // Upper triangle (i < j), row-major; row i starts at row_offset_[i].
    std::vector<std::size_t> row_offset_;
    std::vector<double> separation_;
    std::vector<double> cpar_;
    std::vector<double> crr_;
    std::vector<ModeProjection> modes_;
};

RateResult decay_rate(const ExtendedSource& src, const GreensModel& env, const GreensModel& ref_env, Wavenumber k);

// (p^2/2)[rho_aa + rho_bb + 2 rho_ab cos(phase)]: the decay_rate numerator of pair_source(a, b, p, phase).
double two_dipole_rate(const PolarizedPoint& a, const PolarizedPoint& b, double amplitude, double phase,
                       const GreensModel& env, Wavenumber k);

struct RateSpectrum {
    std::vector<double> k_values;
    std::vector<RateResult> results;

    Spectrum ratio() const;
    Spectrum numerator() const;
};

// `workers` = 0 uses default_worker_count(). Output is independent of it.
RateSpectrum sweep_spectrum(const ExtendedSource& src, const GreensModel& env, const GreensModel& ref_env,
                            const std::vector<double>& k_grid, std::size_t workers = 0);

struct ElementRule {
    enum class Kind { fixed, max_spacing };
    Kind kind = Kind::max_spacing;
    std::size_t count = 1;      // fixed
    double spacing = 0.0;       // max_spacing, nm; <= 0 selects lambda/(20 n)
    std::size_t min_count = 1;  // max_spacing

    static ElementRule fixed(std::size_t n) { return {Kind::fixed, n, 0.0, 1}; }
    static ElementRule max_spacing_nm(double s, std::size_t min_count = 1) { return {Kind::max_spacing, 1, s, min_count}; }

    std::size_t element_count(double d, Wavenumber k, double n) const;
};

struct LengthCurve {
    std::vector<double> d_values;
    std::vector<RateResult> results;
    std::vector<std::size_t> element_counts;
    // Re[u . e_m(center + axis d/2)] of the dominant structured mode; NaN without one.
    std::vector<double> extremity_field;

    std::vector<double> ratios() const;
    std::vector<double> numerators() const;
};

struct LineSweepSpec {
    Position center;
    Orientation axis = Orientation::x_axis();
    Orientation polarization = Orientation::y_axis();
    std::vector<double> d_grid;
    ElementRule rule{};
    double amplitude = 1.0;
};

LengthCurve sweep_length(const LineSweepSpec& spec, const GreensModel& env, const GreensModel& ref_env, Wavenumber k,
                         std::size_t workers = 0);

// Index of the structured mode with the largest LDOS contribution at p, if any.
std::optional<std::size_t> dominant_mode(const GreensModel& env, const PolarizedPoint& p, Wavenumber k);

// Re[u . e(r)] of structured mode `index`.
double structured_field_amplitude(const GreensModel& env, std::size_t index, const PolarizedPoint& p);

// beta = coherent / incoherent rate; > 1 superradiant, < 1 subradiant.
double coherence_classification(const ExtendedSource& src, const GreensModel& env, Wavenumber k);

} // namespace purcell
