#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>

#include "purcell/engine.hpp"
#include "purcell/parallel.hpp"

using namespace purcell;

namespace {

GreensModel single_mode_env() { return GreensModel::structured(ModeSet({default_surrogate_l3()})); }

Wavenumber l3_k() { return default_surrogate_l3().resonance(); }

// Independent full double sum over complex weights.
Complex full_sum(const ExtendedSource& s, const GreensModel& env, Wavenumber k) {
    Complex acc{};
    for (const auto& ei : s.elements())
        for (const auto& ej : s.elements()) acc += std::conj(ei.weight) * ej.weight * cdos(env, ei.point, ej.point, k);
    return acc;
}

ExtendedSource random_source(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> pos(-300.0, 300.0);
    std::normal_distribution<double> g;
    std::vector<DipoleElement> e;
    for (std::size_t i = 0; i < n; ++i)
        e.push_back({{{pos(rng), pos(rng), 0.1 * pos(rng)}, Orientation::normalized(g(rng), g(rng), g(rng))},
                     Complex(g(rng), g(rng))});
    return ExtendedSource(std::move(e), Position{});
}

} // namespace

TEST_CASE("point source in vacuum has unit rate") {
    const PolarizedPoint p{{3, -4, 5}, Orientation::normalized(1, 2, 3)};
    const auto r = decay_rate(point_source(p, Complex(0.0, 7.0)), GreensModel::homogeneous(1.0),
                              GreensModel::homogeneous(1.0), Wavenumber(0.004));
    CHECK(std::abs(r.gamma_ratio - 1.0) <= 1e-12);
}

TEST_CASE("point source reduces to the LDOS ratio") {
    std::mt19937_64 rng(51);
    const GreensModel env = GreensModel::composite(3.48, ModeSet({default_surrogate_l3()}));
    const GreensModel ref = GreensModel::homogeneous(3.48);
    std::uniform_real_distribution<double> pos(-300.0, 300.0);
    for (int i = 0; i < 50; ++i) {
        const PolarizedPoint p{{pos(rng), pos(rng), 0}, Orientation::normalized(pos(rng), pos(rng), pos(rng))};
        const Wavenumber k(l3_k().value() * (1.0 + 1e-3 * (i - 25) / 25.0));
        const auto r = decay_rate(point_source(p, Complex(2.0, -1.0)), env, ref, k);
        CHECK(std::abs(r.gamma_ratio - cdos(env, p, p, k) / cdos(ref, p, p, k)) <= 1e-12 * r.gamma_ratio);
    }
}

TEST_CASE("rate ratio is independent of source amplitude") {
    std::mt19937_64 rng(52);
    const ExtendedSource s = random_source(rng, 12);
    const GreensModel env = GreensModel::composite(1.5, ModeSet({default_surrogate_l3()}));
    const auto r1 = decay_rate(s, env, GreensModel::homogeneous(1.0), l3_k());
    const auto r2 = decay_rate(s.scaled(Complex(-3.0, 4.0)), env, GreensModel::homogeneous(1.0), l3_k());
    CHECK(r2.gamma_ratio == doctest::Approx(r1.gamma_ratio).epsilon(1e-12));
    CHECK(r2.numerator == doctest::Approx(25.0 * r1.numerator).epsilon(1e-12));
}

TEST_CASE("double sum matches a full complex sum and is real") {
    std::mt19937_64 rng(53);
    AnalyticSurrogateParams p2;
    p2.amplitude = Complex(0.4, 0.9);
    p2.center = Position(150, 0, 0);
    const QnmPair pair{Qnm(AnalyticSurrogate{{}}, l3_k(), l3_k().value() / 200.0),
                       Qnm(AnalyticSurrogate{p2}, l3_k(), l3_k().value() / 2000.0)};
    const std::vector<GreensModel> envs = {GreensModel::homogeneous(2.0),
                                           GreensModel::composite(3.48, ModeSet({default_surrogate_l3()})),
                                           GreensModel::composite(1.0, pair)};
    for (const auto& env : envs) {
        for (int t = 0; t < 5; ++t) {
            const ExtendedSource s = random_source(rng, 9);
            const Wavenumber k(l3_k().value() * (1.0 + 2e-4 * t));
            const Complex oracle = full_sum(s, env, k);
            const double num = PreparedSum(s, env).coherent(k);
            CHECK(std::abs(oracle.imag()) <= 1e-12 * std::abs(oracle.real()));
            CHECK(std::abs(num - oracle.real()) <= 1e-11 * std::abs(oracle.real()) + 1e-15);
        }
    }
}

TEST_CASE("two_dipole_rate equals the pair-source numerator") {
    const GreensModel env = GreensModel::composite(3.48, ModeSet({default_surrogate_l3()}));
    const PolarizedPoint a{{-90, 10, 0}, Orientation::y_axis()};
    const PolarizedPoint b{{140, -20, 0}, Orientation::normalized(0.2, 1.0, 0.0)};
    for (double phi : {0.0, 0.7, kPi / 2, kPi, 4.0}) {
        const auto r = decay_rate(pair_source(a, b, 1.7, phi), env, GreensModel::homogeneous(1.0), l3_k());
        CHECK(two_dipole_rate(a, b, 1.7, phi, env, l3_k()) == doctest::Approx(r.numerator).epsilon(1e-12));
    }
}

TEST_CASE("super- and subradiance in a single real mode") {
    const GreensModel env = single_mode_env();
    const Wavenumber k = l3_k();
    const AnalyticSurrogate field{{}};
    // p2 beyond the node at x0 carries exactly the opposite field of p1.
    const PolarizedPoint p1{{150, 0, 0}, Orientation::y_axis()};
    const double f1 = field.at(p1.position)[1].real();
    double lo = 160.0, hi = 320.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (field.at({mid, 0, 0})[1].real() > -f1 ? lo : hi) = mid;
    }
    const PolarizedPoint p2{{0.5 * (lo + hi), 0, 0}, Orientation::y_axis()};
    REQUIRE(std::abs(field.at(p2.position)[1].real() + f1) < 1e-14);

    const double single = decay_rate(point_source(p1, 1.0), env, GreensModel::homogeneous(1.0), k).numerator;
    CHECK(std::abs(two_dipole_rate(p1, p2, 1.0, kPi, env, k) - 2.0 * single) <= 1e-12 * single);
    CHECK(std::abs(two_dipole_rate(p1, p2, 1.0, 0.0, env, k)) <= 1e-12 * single);
    CHECK(coherence_classification(pair_source(p1, p2, 1.0, kPi), env, k) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(coherence_classification(pair_source(p1, p2, 1.0, 0.0), env, k) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(coherence_classification(pair_source(p1, p2, 1.0, kPi / 2), env, k) == doctest::Approx(1.0).epsilon(1e-12));

    // Mirrored points share a sign: in phase is superradiant.
    const PolarizedPoint m{{-150, 0, 0}, Orientation::y_axis()};
    CHECK(std::abs(two_dipole_rate(p1, m, 1.0, 0.0, env, k) - 2.0 * single) <= 1e-12 * single);
    CHECK(std::abs(two_dipole_rate(p1, m, 1.0, kPi, env, k)) <= 1e-12 * single);
}

TEST_CASE("degenerate reference is rejected") {
    const PolarizedPoint far{{1e5, 0, 0}, Orientation::y_axis()};
    CHECK_THROWS_AS(decay_rate(point_source(far, 1.0), GreensModel::homogeneous(1.0), single_mode_env(), l3_k()),
                    DegenerateReference);
}

TEST_CASE("single-mode spectrum has the mode's linewidth") {
    const GreensModel env = single_mode_env();
    const PolarizedPoint p{{0, 0, 0}, Orientation::y_axis()};
    const double km = l3_k().value(), g = default_surrogate_l3().damping();
    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(km - 3 * g + 6 * g * i / 2000.0);
    const Spectrum num = sweep_spectrum(point_source(p, 1.0), env, GreensModel::homogeneous(1.0), grid, 2).numerator();
    const auto& s = num.samples();
    const std::size_t peak = num.argmax();
    const double half = 0.5 * s[peak];
    auto crossing = [&](std::size_t i) {
        return grid[i] + (half - s[i]) * (grid[i + 1] - grid[i]) / (s[i + 1] - s[i]);
    };
    std::size_t l = peak, r = peak;
    while (s[l] > half) --l;
    while (s[r] > half) ++r;
    const double fwhm = crossing(r - 1) - crossing(l);
    CHECK(grid[peak] / fwhm == doctest::Approx(kL3QualityFactor).epsilon(0.01));
}

TEST_CASE("field-free structured part leaves the background rate") {
    const GreensModel env = GreensModel::composite(1.0, ModeSet({default_surrogate_l3()}));
    const PolarizedPoint far{{1e5, 0, 0}, Orientation::y_axis()};
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(0.0049 + 1e-6 * i);
    const RateSpectrum rs = sweep_spectrum(point_source(far, 1.0), env, GreensModel::homogeneous(1.0), grid);
    for (const auto& r : rs.results) CHECK(r.gamma_ratio == 1.0);
}

TEST_CASE("sweeps are bitwise independent of worker count") {
    std::mt19937_64 rng(54);
    const ExtendedSource s = random_source(rng, 40);
    const GreensModel env = GreensModel::composite(3.48, ModeSet({default_surrogate_l3()}));
    std::vector<double> grid;
    for (int i = 0; i < 97; ++i) grid.push_back(0.00494 + 2e-7 * i);
    const RateSpectrum a = sweep_spectrum(s, env, GreensModel::homogeneous(3.48), grid, 1);
    const RateSpectrum b = sweep_spectrum(s, env, GreensModel::homogeneous(3.48), grid, 5);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a.results[i].gamma_ratio == b.results[i].gamma_ratio);
        CHECK(a.results[i].numerator == b.results[i].numerator);
    }
}

TEST_CASE("sweep_length at d = 0 equals a point source") {
    const GreensModel env = GreensModel::composite(3.48, ModeSet({default_surrogate_l3()}));
    const GreensModel ref = GreensModel::homogeneous(3.48);
    LineSweepSpec spec;
    spec.center = Position(20, 5, 0);
    spec.d_grid = {0.0, 50.0};
    const LengthCurve c = sweep_length(spec, env, ref, l3_k(), 1);
    const auto r = decay_rate(point_source({spec.center, Orientation::y_axis()}, 1.0), env, ref, l3_k());
    CHECK(c.results[0].gamma_ratio == doctest::Approx(r.gamma_ratio).epsilon(1e-13));
    CHECK(c.element_counts[0] == 1);
    CHECK(c.extremity_field[0] == doctest::Approx(AnalyticSurrogate{{}}.at(spec.center)[1].real()));
    CHECK(c.extremity_field[1] == doctest::Approx(AnalyticSurrogate{{}}.at({45, 5, 0})[1].real()));
}

TEST_CASE("homogeneous line numerator peaks where tan X = X") {
    // Continuum limit of the transverse cluster: d* = X/(n k) with X = 4.4934.
    const double n = 3.48;
    const Wavenumber k = wavelength_to_k(1270.0);
    LineSweepSpec spec;
    for (double d = 200.0; d <= 320.0; d += 1.0) spec.d_grid.push_back(d);
    spec.rule = ElementRule::max_spacing_nm(1.0);
    const LengthCurve c = sweep_length(spec, GreensModel::homogeneous(n), GreensModel::homogeneous(n), k);
    const auto num = c.numerators();
    const std::size_t best = std::max_element(num.begin(), num.end()) - num.begin();
    const double expected = 4.493409457909064 / (n * k.value());
    CHECK(c.d_values[best] == doctest::Approx(expected).epsilon(0.01));
    for (const auto& r : c.results) CHECK(r.gamma_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixed-count line converges with element count") {
    const GreensModel env = GreensModel::composite(3.48, ModeSet({default_surrogate_l3()}));
    const GreensModel ref = GreensModel::homogeneous(3.48);
    auto value = [&](std::size_t n) {
        return decay_rate(line_source({}, Orientation::x_axis(), Orientation::y_axis(), 400.0, n, 1.0), env, ref, l3_k())
            .gamma_ratio;
    };
    const double r64 = value(64), r128 = value(128), r256 = value(256), r512 = value(512);
    // Endpoint-inclusive sampling converges at first order: each doubling halves the change.
    const double d1 = r64 - r128, d2 = r128 - r256, d3 = r256 - r512;
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(d2 / d3 == doctest::Approx(2.0).epsilon(0.1));
    // Richardson extrapolation of the last two levels.
    CHECK(std::abs((2.0 * r512 - r256) - (2.0 * r256 - r128)) < 0.05 * std::abs(d3));
}

TEST_CASE("element rules") {
    const Wavenumber k = wavelength_to_k(1270.0);
    CHECK(ElementRule::fixed(64).element_count(123.0, k, 3.48) == 64);
    CHECK(ElementRule::max_spacing_nm(2.5).element_count(400.0, k, 3.48) == 161);
    CHECK(ElementRule::max_spacing_nm(2.5, 200).element_count(400.0, k, 3.48) == 200);
    CHECK(ElementRule{}.element_count(300.0, k, 3.48) == default_line_element_count(300.0, k, 3.48));
}

TEST_CASE("parallel_for visits every index once and reports the first failure") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (auto& h : hits) CHECK(h.load() == 1);
    try {
        parallel_for(100, [](std::size_t i) {
            if (i == 17 || i == 60) throw InvalidArgument("bad point");
        }, 3);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(e.index() == 17);
    }
}
