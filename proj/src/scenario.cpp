#include "purcell/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace purcell {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object())
        throw ConfigError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(path + "/" + key, "missing required field");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number())
        throw ConfigError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ConfigError(path, "expected a finite number");
    return d;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, path + "/" + key);
}

std::size_t count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError(path, "expected a positive integer");
    return v.get<std::size_t>();
}

std::array<double, 3> triple(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        throw ConfigError(path, "expected an array of 3 numbers");
    return {number(v[0], path + "/0"), number(v[1], path + "/1"), number(v[2], path + "/2")};
}

Position position(const json& v, const std::string& path) {
    const auto t = triple(v, path);
    return {t[0], t[1], t[2]};
}

Orientation orientation(const json& v, const std::string& path) {
    const auto t = triple(v, path);
    try {
        return Orientation::normalized(t[0], t[1], t[2]);
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

Complex complex_value(const json& v, const std::string& path) {
    if (v.is_number())
        return {number(v, path), 0.0};
    if (!v.is_array() || v.size() != 2)
        throw ConfigError(path, "expected a number or [re, im]");
    return {number(v[0], path + "/0"), number(v[1], path + "/1")};
}

std::string string_field(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string())
        throw ConfigError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

VectorFieldModel field_model(const json& obj, const std::string& path, const std::filesystem::path& base_dir) {
    const std::string kind = string_field(obj, "kind", path);
    if (kind == "surrogate_l3") {
        AnalyticSurrogateParams p;
        p.sign_change_half_width = number_or(obj, "x0_nm", p.sign_change_half_width, path);
        p.sigma_x = number_or(obj, "sigma_x_nm", p.sigma_x, path);
        p.sigma_y = number_or(obj, "sigma_y_nm", p.sigma_y, path);
        if (obj.contains("polarization"))
            p.polarization = orientation(obj["polarization"], path + "/polarization");
        if (obj.contains("amplitude"))
            p.amplitude = complex_value(obj["amplitude"], path + "/amplitude");
        if (obj.contains("center"))
            p.center = position(obj["center"], path + "/center");
        try {
            return AnalyticSurrogate(p);
        } catch (const std::exception& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (kind == "grid") {
        std::filesystem::path file = string_field(obj, "path", path);
        if (file.is_relative())
            file = base_dir / file;
        if (!std::filesystem::exists(file))
            throw ConfigError(path + "/path", "grid field file not found: " + file.string());
        try {
            return load_grid_field(file);
        } catch (const std::exception& e) {
            throw ConfigError(path + "/path", e.what());
        }
    }
    throw ConfigError(path + "/kind", "unknown field kind '" + kind + "' (expected surrogate_l3 or grid)");
}

// Resonance given as wavelength_nm + quality_factor, or k + gamma.
std::pair<Wavenumber, double> resonance(const json& obj, const std::string& path) {
    try {
        if (obj.contains("wavelength_nm")) {
            const Wavenumber k = wavelength_to_k(number(obj["wavelength_nm"], path + "/wavelength_nm"));
            const double q = number(require(obj, "quality_factor", path), path + "/quality_factor");
            if (!(q > 0.0))
                throw ConfigError(path + "/quality_factor", "must be positive");
            return {k, k.value() / q};
        }
        const Wavenumber k(number(require(obj, "k", path), path + "/k"));
        return {k, number(require(obj, "gamma", path), path + "/gamma")};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

GreensModel environment(const json& obj, const std::string& path, const std::filesystem::path& base_dir,
                        bool is_reference) {
    const std::string kind = string_field(obj, "kind", path);
    try {
        if (kind == "homogeneous")
            return GreensModel::homogeneous(number(require(obj, "n", path), path + "/n"));
        if (is_reference)
            throw ConfigError(path + "/kind", "reference environment must be homogeneous");

        const double background = number_or(obj, "background_index", 1.0, path);
        if (kind == "modal") {
            const json& modes = require(obj, "modes", path);
            if (!modes.is_array() || modes.empty())
                throw ConfigError(path + "/modes", "expected a non-empty array");
            std::vector<LossyMode> out;
            for (std::size_t i = 0; i < modes.size(); ++i) {
                const std::string mp = path + "/modes/" + std::to_string(i);
                auto [k, g] = resonance(modes[i], mp);
                out.emplace_back(field_model(require(modes[i], "field", mp), mp + "/field", base_dir), k, g);
            }
            return GreensModel::composite(background, ModeSet(std::move(out)));
        }
        if (kind == "qnm") {
            const json& qnms = require(obj, "qnms", path);
            if (!qnms.is_array() || qnms.size() != 2)
                throw ConfigError(path + "/qnms", "expected exactly two QNMs");
            std::vector<Qnm> out;
            for (std::size_t i = 0; i < 2; ++i) {
                const std::string mp = path + "/qnms/" + std::to_string(i);
                auto [k, g] = resonance(qnms[i], mp);
                out.emplace_back(field_model(require(qnms[i], "field", mp), mp + "/field", base_dir), k, g);
            }
            return GreensModel::composite(background, QnmPair{out[0], out[1]});
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + "/kind", "unknown environment kind '" + kind + "' (expected homogeneous, modal or qnm)");
}

PolarizedPoint polarized_point(const json& obj, const std::string& path) {
    return {position(require(obj, "position", path), path + "/position"),
            orientation(require(obj, "orientation", path), path + "/orientation")};
}

ExtendedSource source(const json& obj, const std::string& path, Wavenumber k_hint, double n_max) {
    const std::string kind = string_field(obj, "kind", path);
    try {
        if (kind == "point")
            return point_source(polarized_point(obj, path), obj.contains("amplitude")
                                                                ? complex_value(obj["amplitude"], path + "/amplitude")
                                                                : Complex(1.0, 0.0));
        if (kind == "pair")
            return pair_source(polarized_point(require(obj, "a", path), path + "/a"),
                               polarized_point(require(obj, "b", path), path + "/b"),
                               number_or(obj, "amplitude", 1.0, path), number_or(obj, "phase", 0.0, path));
        if (kind == "line") {
            const double d = number(require(obj, "d", path), path + "/d");
            const std::size_t n = obj.contains("n") ? count(obj["n"], path + "/n")
                                                    : default_line_element_count(d, k_hint, n_max);
            return line_source(position(require(obj, "center", path), path + "/center"),
                               orientation(require(obj, "axis", path), path + "/axis"),
                               orientation(require(obj, "polarization", path), path + "/polarization"), d, n,
                               number_or(obj, "amplitude", 1.0, path));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + "/kind", "unknown source kind '" + kind + "' (expected point, pair or line)");
}

std::vector<double> linspace(double lo, double hi, std::size_t n, const std::string& path) {
    if (n == 1)
        return {lo};
    if (!(hi > lo))
        throw ConfigError(path, "range maximum must exceed minimum");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> spectrum_grid(const json& obj, const std::string& path) {
    if (obj.contains("k_values")) {
        const json& arr = obj["k_values"];
        if (!arr.is_array())
            throw ConfigError(path + "/k_values", "expected an array");
        std::vector<double> v;
        for (std::size_t i = 0; i < arr.size(); ++i)
            v.push_back(number(arr[i], path + "/k_values/" + std::to_string(i)));
        return v;
    }
    const std::size_t n = count(require(obj, "count", path), path + "/count");
    if (obj.contains("wavelength_min_nm")) {
        const double lmin = number(obj["wavelength_min_nm"], path + "/wavelength_min_nm");
        const double lmax = number(require(obj, "wavelength_max_nm", path), path + "/wavelength_max_nm");
        if (!(lmin > 0.0) || !(lmax > lmin))
            throw ConfigError(path, "need 0 < wavelength_min_nm < wavelength_max_nm");
        return linspace(2.0 * kPi / lmax, 2.0 * kPi / lmin, n, path);
    }
    return linspace(number(require(obj, "k_min", path), path + "/k_min"),
                    number(require(obj, "k_max", path), path + "/k_max"), n, path);
}

ElementRule element_rule(const json& obj, const std::string& path) {
    const std::string kind = string_field(obj, "kind", path);
    if (kind == "fixed")
        return ElementRule::fixed(count(require(obj, "count", path), path + "/count"));
    if (kind == "max_spacing") {
        const double s = number_or(obj, "spacing_nm", 0.0, path);
        const std::size_t min_n = obj.contains("min_count") ? count(obj["min_count"], path + "/min_count") : 1;
        return ElementRule::max_spacing_nm(s, min_n);
    }
    throw ConfigError(path + "/kind", "unknown element rule '" + kind + "' (expected fixed or max_spacing)");
}

} // namespace

ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/", std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("/", "expected a JSON object");

    ScenarioConfig cfg;
    cfg.config_hash = fnv1a64(json_text);
    if (root.contains("scenario")) {
        if (!root["scenario"].is_string() || root["scenario"].get<std::string>().empty())
            throw ConfigError("/scenario", "expected a non-empty string");
        cfg.name = root["scenario"].get<std::string>();
        if (cfg.name.find_first_of("/\\") != std::string::npos)
            throw ConfigError("/scenario", "name must not contain path separators");
    }

    cfg.environment = environment(require(root, "environment", ""), "/environment", base_dir, false);
    cfg.reference = environment(require(root, "reference", ""), "/reference", base_dir, true);
    const double n_max = std::max(cfg.environment.max_index(), cfg.reference.max_index());

    const json& sweep = require(root, "sweep", "");
    const bool has_spectrum = sweep.contains("spectrum");
    const bool has_length = sweep.contains("length");
    if (has_spectrum == has_length)
        throw ConfigError("/sweep", "exactly one of 'spectrum' or 'length' is required");

    const json& src = require(root, "source", "");
    if (has_spectrum) {
        SpectrumSweep s{spectrum_grid(sweep["spectrum"], "/sweep/spectrum")};
        try {
            require_ascending(s.k_grid, "spectrum");
            if (!(s.k_grid.front() > 0.0))
                throw InvalidArgument("spectrum grid must be positive");
        } catch (const InvalidArgument& e) {
            throw ConfigError("/sweep/spectrum", e.what());
        }
        // Line sources without an explicit n use the shortest wavelength of the sweep.
        cfg.source = source(src, "/source", Wavenumber(s.k_grid.back()), n_max);
        cfg.sweep = std::move(s);
    } else {
        const json& len = sweep["length"];
        const std::string lp = "/sweep/length";
        LengthSweep s;
        if (string_field(src, "kind", "/source") != "line")
            throw ConfigError("/source/kind", "length sweeps need a line source");
        s.line.center = position(require(src, "center", "/source"), "/source/center");
        s.line.axis = orientation(require(src, "axis", "/source"), "/source/axis");
        s.line.polarization = orientation(require(src, "polarization", "/source"), "/source/polarization");
        s.line.amplitude = number_or(src, "amplitude", 1.0, "/source");
        if (!(s.line.amplitude > 0.0))
            throw ConfigError("/source/amplitude", "must be positive");
        s.line.d_grid = linspace(number(require(len, "d_min_nm", lp), lp + "/d_min_nm"),
                                 number(require(len, "d_max_nm", lp), lp + "/d_max_nm"),
                                 count(require(len, "count", lp), lp + "/count"), lp);
        if (s.line.d_grid.front() < 0.0)
            throw ConfigError(lp + "/d_min_nm", "must be non-negative");
        try {
            s.k = len.contains("wavelength_nm")
                      ? wavelength_to_k(number(len["wavelength_nm"], lp + "/wavelength_nm"))
                      : Wavenumber(number(require(len, "k", lp), lp + "/k"));
        } catch (const InvalidArgument& e) {
            throw ConfigError(lp, e.what());
        }
        if (len.contains("element_rule"))
            s.line.rule = element_rule(len["element_rule"], lp + "/element_rule");
        cfg.sweep = std::move(s);
    }

    if (root.contains("output")) {
        const json& out = root["output"];
        if (out.contains("format")) {
            const std::string f = string_field(out, "format", "/output");
            if (f != "csv" && f != "json" && f != "both")
                throw ConfigError("/output/format", "expected csv, json or both");
            cfg.format = f;
        }
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string(), "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.parent_path());
}

std::size_t ScenarioResult::argmax() const {
    return static_cast<std::size_t>(std::max_element(gamma_ratio.begin(), gamma_ratio.end()) - gamma_ratio.begin());
}

std::size_t ScenarioResult::argmin() const {
    return static_cast<std::size_t>(std::min_element(gamma_ratio.begin(), gamma_ratio.end()) - gamma_ratio.begin());
}

ScenarioResult run_scenario(const ScenarioConfig& config, std::size_t workers) {
    ScenarioResult out;
    out.name = config.name;
    out.config_hash = config.config_hash;
    if (const auto* s = std::get_if<SpectrumSweep>(&config.sweep)) {
        const RateSpectrum spec = sweep_spectrum(*config.source, config.environment, config.reference, s->k_grid, workers);
        out.abscissa = spec.k_values;
        out.gamma_ratio = spec.ratio().samples();
    } else {
        const auto& l = std::get<LengthSweep>(config.sweep);
        const LengthCurve curve = sweep_length(l.line, config.environment, config.reference, l.k, workers);
        out.is_length = true;
        out.abscissa = curve.d_values;
        out.gamma_ratio = curve.ratios();
        out.extremity_field = curve.extremity_field;
    }
    return out;
}

std::string format_csv(const ScenarioResult& r) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.config_hash));
    std::string out = "# scenario=" + r.name + " config_fnv1a64=" + hash + "\n";
    out += r.is_length ? "d_nm,gamma_ratio,extremity_field\n" : "k,lambda_nm,gamma_ratio\n";
    for (std::size_t i = 0; i < r.abscissa.size(); ++i) {
        if (r.is_length)
            out += format_real(r.abscissa[i]) + "," + format_real(r.gamma_ratio[i]) + "," +
                   format_real(r.extremity_field[i]) + "\n";
        else
            out += format_real(r.abscissa[i]) + "," + format_real(2.0 * kPi / r.abscissa[i]) + "," +
                   format_real(r.gamma_ratio[i]) + "\n";
    }
    return out;
}

ScenarioSummary summarize(const ScenarioResult& r) {
    const std::size_t imax = r.argmax();
    return {r.name, r.abscissa[imax], r.gamma_ratio[r.argmin()], r.gamma_ratio[imax]};
}

std::string format_summary_json(const ScenarioSummary& s) {
    json j = {{"scenario", s.scenario},
              {"k_or_d_at_extremum", s.k_or_d_at_extremum},
              {"gamma_ratio_min", s.gamma_ratio_min},
              {"gamma_ratio_max", s.gamma_ratio_max}};
    return j.dump(2) + "\n";
}

ScenarioSummary parse_summary_json(std::string_view text) {
    const json j = json::parse(text);
    return {j.at("scenario").get<std::string>(), j.at("k_or_d_at_extremum").get<double>(),
            j.at("gamma_ratio_min").get<double>(), j.at("gamma_ratio_max").get<double>()};
}

} // namespace purcell
