#include "purcell/greens_qnm.hpp"

#include <algorithm>
#include <cmath>

namespace purcell {

Qnm::Qnm(VectorFieldModel field, Wavenumber k_m, double gamma_m)
    : field_(std::move(field)), k_m_(k_m), gamma_m_(gamma_m) {
    if (!(gamma_m > 0.0) || !std::isfinite(gamma_m))
        throw InvalidArgument("QNM damping rate must be positive and finite");
}

namespace {

Complex projected(const Qnm& m, const PolarizedPoint& p) {
    return p.orientation.project(field_at(m.field(), p.position));
}

// (1/pi) Im[P / (w - k)] with 1/(w - k) = ((k_m - k) + i gamma/2) / D.
double qnm_cdos_term(const Qnm& m, Complex product, double k) {
    const double detuning = m.resonance().value() - k;
    const double half_gamma = 0.5 * m.damping();
    const double denom = detuning * detuning + half_gamma * half_gamma;
    return (product.real() * half_gamma + product.imag() * detuning) / (kPi * denom);
}

} // namespace

Complex green_qnm_projected(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    Complex total{};
    for (const Qnm* m : pair.modes()) {
        const Complex product = projected(*m, a) * projected(*m, b);
        total += product / (m->complex_frequency() - k.value());
    }
    return total / (2.0 * k.value());
}

double cdos_qnm(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    // (2k/pi) Im[(1/2k) sum P/(w-k)], with the k factors cancelled analytically.
    double total = 0.0;
    for (const Qnm* m : pair.modes())
        total += qnm_cdos_term(*m, projected(*m, a) * projected(*m, b), k.value());
    return total;
}

double fano_profile(double k_m, double gamma_m, double q, double k) {
    // Dimensionless detuning eps = 2 (k - k_m) / gamma.
    const double eps = (k - k_m) / (0.5 * gamma_m);
    const double q2 = q * q;
    return ((q2 - 1.0) + 2.0 * q * eps) / ((q2 + 1.0) * (eps * eps + 1.0));
}

double fano_profile_lorentzian_limit(double k_m, double gamma_m, double k) {
    const double eps = (k - k_m) / (0.5 * gamma_m);
    return 1.0 / (eps * eps + 1.0);
}

double fano_profile(double k_m, double gamma_m, const std::optional<double>& q, double k) {
    return q ? fano_profile(k_m, gamma_m, *q, k) : fano_profile_lorentzian_limit(k_m, gamma_m, k);
}

double qnm_phase(const Qnm& qnm, const PolarizedPoint& p) {
    const Complex v = projected(qnm, p);
    if (std::abs(v) < 1e-14)
        throw UndefinedPhase("projected QNM field vanishes; phase is undefined");
    return std::arg(v);
}

std::optional<double> tangent_q(double phi) {
    if (std::abs(std::cos(phi)) < 1e-12)
        return std::nullopt;
    return std::tan(phi);
}

FanoQParams fano_q_params(double phi1, double phi2) {
    FanoQParams out;
    out.q1 = tangent_q(phi1);
    out.q2 = tangent_q(phi2);
    if (out.q1 && out.q2)
        out.q12_mean = 0.5 * (*out.q1 + *out.q2);
    out.q12_half_angle = tangent_q(0.5 * (phi1 + phi2));
    return out;
}

std::vector<FanoTerm> fano_decompose_cdos(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b) {
    static constexpr const char* kLabels[2] = {"a", "b"};
    std::vector<FanoTerm> terms;
    const auto modes = pair.modes();
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Qnm& m = *modes[i];
        const Complex pa = projected(m, a);
        const Complex pb = projected(m, b);
        if (std::abs(pa) < 1e-14 || std::abs(pb) < 1e-14)
            continue;
        FanoTerm t;
        t.label = kLabels[i];
        t.k_m = m.resonance().value();
        t.gamma_m = m.damping();
        t.phase_a = std::arg(pa);
        t.phase_b = std::arg(pb);
        t.q = tangent_q(0.5 * (t.phase_a + t.phase_b));
        t.coefficient = -2.0 * std::abs(pa) * std::abs(pb) / (kPi * t.gamma_m);
        terms.push_back(std::move(t));
    }
    if (terms.empty())
        throw UndefinedPhase("no QNM has a non-zero projected field at both points");
    return terms;
}

double evaluate_fano_sum(const std::vector<FanoTerm>& terms, double k) {
    double total = 0.0;
    for (const auto& t : terms)
        total += t.evaluate(k);
    return total;
}

FanoComparisonReport compare_fano_q_forms(const QnmPair& pair, const PolarizedPoint& a, const PolarizedPoint& b,
                                          const std::vector<double>& k_grid) {
    require_ascending(k_grid, "comparison");
    const auto terms = fano_decompose_cdos(pair, a, b);

    FanoComparisonReport report;
    report.phases_equal = true;
    std::vector<FanoTerm> mean_terms = terms;
    for (auto& t : mean_terms) {
        const FanoQParams qp = fano_q_params(t.phase_a, t.phase_b);
        report.labels.push_back(t.label);
        report.q_half_angle.push_back(t.q);
        report.q_mean.push_back(qp.q12_mean);
        report.phases_equal = report.phases_equal && t.phase_a == t.phase_b;
        t.q = qp.q12_mean;
    }

    double scale = 0.0;
    std::vector<double> direct(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        direct[i] = cdos_qnm(pair, a, b, Wavenumber(k_grid[i]));
        scale = std::max(scale, std::abs(direct[i]));
    }
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double half = evaluate_fano_sum(terms, k_grid[i]);
        const double mean = evaluate_fano_sum(mean_terms, k_grid[i]);
        report.max_rel_error_half_angle = std::max(report.max_rel_error_half_angle, std::abs(half - direct[i]) / scale);
        report.max_rel_error_mean = std::max(report.max_rel_error_mean, std::abs(mean - direct[i]) / scale);
    }
    return report;
}

} // namespace purcell
