#include "purcell/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "purcell/kernels/kernels.hpp"
#include "purcell/parallel.hpp"

namespace purcell {

PreparedSum::PreparedSum(const ExtendedSource& src, const GreensModel& env) : n_(src.size()) {
    const auto& elems = src.elements();
    wr_.reserve(n_);
    wi_.reserve(n_);
    for (const auto& e : elems) {
        wr_.push_back(e.weight.real());
        wi_.push_back(e.weight.imag());
    }

    if (env.background()) {
        background_index_ = env.background()->index();
        row_offset_.resize(n_ + 1);
        const std::size_t pairs = n_ * (n_ - 1) / 2;
        separation_.reserve(pairs);
        cpar_.reserve(pairs);
        crr_.reserve(pairs);
        for (std::size_t i = 0; i < n_; ++i) {
            row_offset_[i] = separation_.size();
            for (std::size_t j = i + 1; j < n_; ++j) {
                const PairGeometry g = pair_geometry(elems[i].point, elems[j].point);
                separation_.push_back(g.separation);
                cpar_.push_back(g.cpar);
                crr_.push_back(g.crr);
            }
        }
        row_offset_[n_] = separation_.size();
    }

    if (env.structured_part()) {
        auto project = [&](const VectorFieldModel& field, Wavenumber km, double gamma, bool qnm) {
            ModeProjection m{{}, {}, km, gamma, qnm};
            m.re.reserve(n_);
            m.im.reserve(n_);
            for (const auto& e : elems) {
                const Complex p = e.point.orientation.project(field_at(field, e.point.position));
                m.re.push_back(p.real());
                m.im.push_back(p.imag());
            }
            modes_.push_back(std::move(m));
        };
        std::visit(
            [&](const auto& model) {
                using T = std::decay_t<decltype(model)>;
                if constexpr (std::is_same_v<T, ModeSet>) {
                    for (const auto& mode : model.modes())
                        project(mode.field(), mode.resonance(), mode.damping(), false);
                } else {
                    for (const Qnm* q : model.modes())
                        project(q->field(), q->resonance(), q->damping(), true);
                }
            },
            *env.structured_part());
    }
}

double PreparedSum::structured_diagonal(const ModeProjection& m, std::size_t i, double k) const {
    const double pr = m.re[i];
    const double pi = m.im[i];
    const double detuning = m.k_m.value() - k;
    const double half_gamma = 0.5 * m.gamma_m;
    const double denom = detuning * detuning + half_gamma * half_gamma;
    if (!m.qnm)
        return m.gamma_m / (2.0 * kPi) / denom * (pr * pr + pi * pi);
    // (1/pi) Im[p^2 / (w - k)], p^2 = (pr^2 - pi^2) + 2i pr pi
    return ((pr * pr - pi * pi) * half_gamma + 2.0 * pr * pi * detuning) / (kPi * denom);
}

double PreparedSum::incoherent(Wavenumber k) const {
    const double kv = k.value();
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double w2 = wr_[i] * wr_[i] + wi_[i] * wi_[i];
        double rho = 0.0;
        if (background_index_)
            rho += free_space_ldos(k, *background_index_);
        for (const auto& m : modes_)
            rho += structured_diagonal(m, i, kv);
        total += w2 * rho;
    }
    return total;
}

double PreparedSum::coherent(Wavenumber k) const {
    const auto& kern = kernels::active_kernels();
    const double kv = k.value();
    std::vector<double> row(n_ > 0 ? n_ - 1 : 0);

    double bg_diag = 0.0, bg_off = 0.0;
    double st_diag = 0.0, st_off = 0.0;
    const double bg_ldos = background_index_ ? free_space_ldos(k, *background_index_) : 0.0;
    const double bg_scale = background_index_ ? 2.0 * kv / kPi * (*background_index_ * kv) / (4.0 * kPi) : 0.0;

    for (std::size_t i = 0; i < n_; ++i) {
        const double w2 = wr_[i] * wr_[i] + wi_[i] * wi_[i];
        const std::size_t len = n_ - i - 1;
        const std::span<double> out(row.data(), len);
        const std::span<const double> wr_tail(wr_.data() + i + 1, len);
        const std::span<const double> wi_tail(wi_.data() + i + 1, len);

        if (background_index_) {
            bg_diag += w2 * bg_ldos;
            if (len > 0) {
                const std::size_t off = row_offset_[i];
                kern.dyadic_row(*background_index_ * kv, {separation_.data() + off, len}, {cpar_.data() + off, len},
                                {crr_.data() + off, len}, out);
                bg_off += kern.hermitian_row(wr_[i], wi_[i], wr_tail, wi_tail, out);
            }
        }

        if (!modes_.empty()) {
            std::fill(out.begin(), out.end(), 0.0);
            for (const auto& m : modes_) {
                st_diag += w2 * structured_diagonal(m, i, kv);
                if (len == 0)
                    continue;
                const double detuning = m.k_m.value() - kv;
                const double half_gamma = 0.5 * m.gamma_m;
                const double denom = detuning * detuning + half_gamma * half_gamma;
                const double pr = m.re[i];
                const double pim = m.im[i];
                double alpha, beta;
                if (!m.qnm) {
                    // c Re[p_i conj(p_j)] = c (pr_i pr_j + pi_i pi_j)
                    const double c = m.gamma_m / (2.0 * kPi) / denom;
                    alpha = c * pr;
                    beta = c * pim;
                } else {
                    // (1/pi) Im[p_i p_j z], z = (detuning + i gamma/2)/denom
                    const double ur = (pr * detuning - pim * half_gamma) / (kPi * denom);
                    const double ui = (pr * half_gamma + pim * detuning) / (kPi * denom);
                    alpha = ui;
                    beta = ur;
                }
                kern.accumulate_re_im(alpha, beta, {m.re.data() + i + 1, len}, {m.im.data() + i + 1, len}, out);
            }
            if (len > 0)
                st_off += kern.hermitian_row(wr_[i], wi_[i], wr_tail, wi_tail, out);
        }
    }
    return (bg_diag + 2.0 * bg_scale * bg_off) + (st_diag + 2.0 * st_off);
}

namespace {

RateResult ratio_of(double num, double den, Wavenumber k) {
    if (!(den > 0.0) || std::abs(den) < 1e-300 || !std::isfinite(den))
        throw DegenerateReference("reference double sum is not positive (" + std::to_string(den) + ")");
    return {num / den, num, den, k.value()};
}

} // namespace

RateResult decay_rate(const ExtendedSource& src, const GreensModel& env, const GreensModel& ref_env, Wavenumber k) {
    const PreparedSum num(src, env);
    const PreparedSum den(src, ref_env);
    return ratio_of(num.coherent(k), den.coherent(k), k);
}

double two_dipole_rate(const PolarizedPoint& a, const PolarizedPoint& b, double amplitude, double phase,
                       const GreensModel& env, Wavenumber k) {
    if (!(amplitude > 0.0))
        throw InvalidArgument("dipole amplitude must be positive");
    const double raa = cdos(env, a, a, k);
    const double rbb = cdos(env, b, b, k);
    const double rab = cdos(env, a, b, k);
    return 0.5 * amplitude * amplitude * (raa + rbb + 2.0 * rab * std::cos(phase));
}

Spectrum RateSpectrum::ratio() const {
    std::vector<double> v;
    v.reserve(results.size());
    for (const auto& r : results)
        v.push_back(r.gamma_ratio);
    return {k_values, std::move(v)};
}

Spectrum RateSpectrum::numerator() const {
    std::vector<double> v;
    v.reserve(results.size());
    for (const auto& r : results)
        v.push_back(r.numerator);
    return {k_values, std::move(v)};
}

RateSpectrum sweep_spectrum(const ExtendedSource& src, const GreensModel& env, const GreensModel& ref_env,
                            const std::vector<double>& k_grid, std::size_t workers) {
    require_ascending(k_grid, "spectrum");
    if (!(k_grid.front() > 0.0))
        throw InvalidArgument("spectrum grid must be positive");
    const PreparedSum num(src, env);
    const PreparedSum den(src, ref_env);
    RateSpectrum out{k_grid, std::vector<RateResult>(k_grid.size())};
    parallel_for(
        k_grid.size(),
        [&](std::size_t i) {
            const Wavenumber k(k_grid[i]);
            out.results[i] = ratio_of(num.coherent(k), den.coherent(k), k);
        },
        workers);
    return out;
}

std::size_t ElementRule::element_count(double d, Wavenumber k, double n) const {
    if (kind == Kind::fixed) {
        if (count == 0)
            throw InvalidArgument("fixed element count must be positive");
        return count;
    }
    if (spacing <= 0.0)
        return std::max(min_count, default_line_element_count(d, k, n));
    return std::max(min_count, static_cast<std::size_t>(std::ceil(d / spacing)) + 1);
}

std::vector<double> LengthCurve::ratios() const {
    std::vector<double> v;
    for (const auto& r : results)
        v.push_back(r.gamma_ratio);
    return v;
}

std::vector<double> LengthCurve::numerators() const {
    std::vector<double> v;
    for (const auto& r : results)
        v.push_back(r.numerator);
    return v;
}

std::optional<std::size_t> dominant_mode(const GreensModel& env, const PolarizedPoint& p, Wavenumber k) {
    if (!env.structured_part())
        return std::nullopt;
    std::optional<std::size_t> best;
    double best_weight = -1.0;
    auto consider = [&](std::size_t idx, const VectorFieldModel& field, Wavenumber km, double gamma) {
        const double amp = std::norm(p.orientation.project(field_at(field, p.position)));
        const double detuning = k.value() - km.value();
        const double w = amp * gamma / (detuning * detuning + 0.25 * gamma * gamma);
        if (w > best_weight) {
            best_weight = w;
            best = idx;
        }
    };
    std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, ModeSet>) {
                for (std::size_t i = 0; i < model.modes().size(); ++i)
                    consider(i, model.modes()[i].field(), model.modes()[i].resonance(), model.modes()[i].damping());
            } else {
                const auto modes = model.modes();
                for (std::size_t i = 0; i < modes.size(); ++i)
                    consider(i, modes[i]->field(), modes[i]->resonance(), modes[i]->damping());
            }
        },
        *env.structured_part());
    return best;
}

double structured_field_amplitude(const GreensModel& env, std::size_t index, const PolarizedPoint& p) {
    if (!env.structured_part())
        throw InvalidArgument("environment has no structured part");
    const VectorFieldModel* field = std::visit(
        [&](const auto& model) -> const VectorFieldModel* {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, ModeSet>) {
                if (index >= model.modes().size())
                    throw InvalidArgument("mode index out of range");
                return &model.modes()[index].field();
            } else {
                if (index >= 2)
                    throw InvalidArgument("mode index out of range");
                return &model.modes()[index]->field();
            }
        },
        *env.structured_part());
    return p.orientation.project(field_at(*field, p.position)).real();
}

LengthCurve sweep_length(const LineSweepSpec& spec, const GreensModel& env, const GreensModel& ref_env, Wavenumber k,
                         std::size_t workers) {
    require_ascending(spec.d_grid, "length");
    if (spec.d_grid.front() < 0.0)
        throw InvalidArgument("length grid must be non-negative");

    const double n_max = std::max(env.max_index(), ref_env.max_index());
    const auto dominant = dominant_mode(env, {spec.center, spec.polarization}, k);

    const std::size_t count = spec.d_grid.size();
    LengthCurve out{spec.d_grid, std::vector<RateResult>(count), std::vector<std::size_t>(count),
                    std::vector<double>(count, std::numeric_limits<double>::quiet_NaN())};
    parallel_for(
        count,
        [&](std::size_t i) {
            const double d = spec.d_grid[i];
            const std::size_t n = spec.rule.element_count(d, k, n_max);
            const ExtendedSource src = line_source(spec.center, spec.axis, spec.polarization, d, n, spec.amplitude);
            out.element_counts[i] = n;
            out.results[i] = decay_rate(src, env, ref_env, k);
            if (dominant) {
                const Position tip = spec.center + Position{spec.axis.ux(), spec.axis.uy(), spec.axis.uz()} * (0.5 * d);
                out.extremity_field[i] = structured_field_amplitude(env, *dominant, {tip, spec.polarization});
            }
        },
        workers);
    return out;
}

double coherence_classification(const ExtendedSource& src, const GreensModel& env, Wavenumber k) {
    const PreparedSum sum(src, env);
    const double incoherent = sum.incoherent(k);
    if (!(std::abs(incoherent) > 1e-300))
        throw DegenerateReference("incoherent (diagonal) rate vanishes");
    return sum.coherent(k) / incoherent;
}

} // namespace purcell
