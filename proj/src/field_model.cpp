#include "purcell/field_model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace purcell {

void AnalyticSurrogateParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(sign_change_half_width) || !positive(sigma_x) || !positive(sigma_y))
        throw InvalidArgument("surrogate widths x0, sigma_x, sigma_y must be positive and finite");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw InvalidArgument("surrogate amplitude must be finite");
}

AnalyticSurrogate::AnalyticSurrogate(AnalyticSurrogateParams params) : params_(params) { params_.validate(); }

ComplexVec3 AnalyticSurrogate::at(const Position& r) const {
    const double x = r.x - params_.center.x;
    const double y = r.y - params_.center.y;
    const double envelope = std::cos(kPi * x / (2.0 * params_.sign_change_half_width)) *
                            std::exp(-x * x / (2.0 * params_.sigma_x * params_.sigma_x) -
                                     y * y / (2.0 * params_.sigma_y * params_.sigma_y));
    const Complex value = params_.amplitude * envelope;
    const Orientation& u = params_.polarization;
    return {value * u.ux(), value * u.uy(), value * u.uz()};
}

GridField::GridField(std::vector<std::size_t> dims, std::array<double, 3> origin, std::array<double, 3> spacing,
                     std::vector<ComplexVec3> samples)
    : dims_(std::move(dims)), origin_(origin), spacing_(spacing), samples_(std::move(samples)) {
    if (dims_.size() != 2 && dims_.size() != 3)
        throw InvalidArgument("grid field must be 2D or 3D");
    if (dims_.size() == 2) {
        origin_[2] = 0.0;
        spacing_[2] = 0.0;
    }
    std::size_t count = 1;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
        if (dims_[a] < 2)
            throw InvalidArgument("grid field needs at least 2 nodes per axis");
        if (!(spacing_[a] > 0.0) || !std::isfinite(spacing_[a]))
            throw InvalidArgument("grid field spacing must be positive");
        if (!std::isfinite(origin_[a]))
            throw InvalidArgument("grid field origin must be finite");
        count *= dims_[a];
    }
    if (samples_.size() != count)
        throw InvalidArgument("grid field has " + std::to_string(samples_.size()) + " samples, dims require " +
                              std::to_string(count));
    for (const auto& s : samples_)
        for (const auto& c : s)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw InvalidArgument("grid field contains a non-finite sample");
}

const ComplexVec3& GridField::node(std::size_t i, std::size_t j, std::size_t k) const {
    return samples_[i + dims_[0] * (j + dims_[1] * k)];
}

ComplexVec3 GridField::at(const Position& r) const {
    const std::array<double, 3> q{r.x, r.y, r.z};
    std::array<std::size_t, 3> base{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < dims_.size(); ++a) {
        const double t = (q[a] - origin_[a]) / spacing_[a];
        const double last = static_cast<double>(dims_[a] - 1);
        if (!(t >= 0.0) || t > last)
            throw OutOfDomain("field query at (" + std::to_string(r.x) + ", " + std::to_string(r.y) + ", " +
                              std::to_string(r.z) + ") lies outside the sampled grid");
        // The upper boundary belongs to the last cell.
        std::size_t cell = static_cast<std::size_t>(t);
        if (cell == dims_[a] - 1)
            cell -= 1;
        base[a] = cell;
        frac[a] = t - static_cast<double>(cell);
    }

    ComplexVec3 out{};
    const std::size_t corners = std::size_t{1} << dims_.size();
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::array<std::size_t, 3> idx{0, 0, 0};
        for (std::size_t a = 0; a < dims_.size(); ++a) {
            const bool upper = (c >> a) & 1U;
            idx[a] = base[a] + (upper ? 1 : 0);
            w *= upper ? frac[a] : 1.0 - frac[a];
        }
        if (w == 0.0)
            continue;
        const ComplexVec3& s = node(idx[0], idx[1], idx[2]);
        for (std::size_t comp = 0; comp < 3; ++comp)
            out[comp] += w * s[comp];
    }
    return out;
}

ComplexVec3 field_at(const VectorFieldModel& model, const Position& r) {
    return std::visit([&](const auto& m) { return m.at(r); }, model);
}

namespace {

struct LineCursor {
    std::string_view text;
    std::string source;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    // Next non-blank, non-comment line; false at end of input.
    bool next(std::string_view& line) {
        while (pos <= text.size()) {
            if (pos == text.size())
                return false;
            const std::size_t end = text.find('\n', pos);
            const std::size_t stop = end == std::string_view::npos ? text.size() : end;
            line = text.substr(pos, stop - pos);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            pos = stop + (end == std::string_view::npos ? 0 : 1);
            ++line_no;
            const std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos || line[first] == '#')
                continue;
            return true;
        }
        return false;
    }
};

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        if (i >= line.size())
            break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

double parse_real(const Token& tok, const LineCursor& cur) {
    double v = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(cur.source, cur.line_no, tok.column, "expected a real number, got '" + std::string(tok.text) + "'");
    if (!std::isfinite(v))
        throw ParseError(cur.source, cur.line_no, tok.column, "non-finite value '" + std::string(tok.text) + "'");
    return v;
}

std::size_t parse_count(const Token& tok, const LineCursor& cur) {
    std::size_t v = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(cur.source, cur.line_no, tok.column, "expected a non-negative integer, got '" + std::string(tok.text) + "'");
    return v;
}

std::vector<Token> header_line(LineCursor& cur, std::string_view keyword) {
    std::string_view line;
    if (!cur.next(line))
        throw ParseError(cur.source, cur.line_no + 1, 1, "missing '" + std::string(keyword) + "' header");
    auto toks = split(line);
    if (toks.front().text != keyword)
        throw ParseError(cur.source, cur.line_no, toks.front().column,
                         "expected '" + std::string(keyword) + "', got '" + std::string(toks.front().text) + "'");
    toks.erase(toks.begin());
    return toks;
}

} // namespace

GridField parse_grid_field(std::string_view text, const std::string& source_name) {
    LineCursor cur{text, source_name};

    const auto dim_toks = header_line(cur, "dims");
    if (dim_toks.size() != 2 && dim_toks.size() != 3)
        throw ParseError(cur.source, cur.line_no, 1, "dims expects 2 or 3 counts");
    std::vector<std::size_t> dims;
    for (const auto& t : dim_toks) {
        const std::size_t n = parse_count(t, cur);
        if (n < 2)
            throw ParseError(cur.source, cur.line_no, t.column, "each grid axis needs at least 2 nodes");
        dims.push_back(n);
    }
    const std::size_t rank = dims.size();

    auto vector_header = [&](std::string_view keyword, bool positive) {
        const auto toks = header_line(cur, keyword);
        if (toks.size() != rank)
            throw ParseError(cur.source, cur.line_no, 1,
                             std::string(keyword) + " expects " + std::to_string(rank) + " values to match dims");
        std::array<double, 3> v{0.0, 0.0, 0.0};
        for (std::size_t a = 0; a < rank; ++a) {
            v[a] = parse_real(toks[a], cur);
            if (positive && !(v[a] > 0.0))
                throw ParseError(cur.source, cur.line_no, toks[a].column, "spacing must be positive");
        }
        return v;
    };
    const auto origin = vector_header("origin", false);
    const auto spacing = vector_header("spacing", true);

    const auto comp = header_line(cur, "components");
    if (comp.size() != 1 || parse_count(comp[0], cur) != 3)
        throw ParseError(cur.source, cur.line_no, 1, "only 'components 3' is supported");

    std::size_t expected = 1;
    for (auto n : dims)
        expected *= n;
    std::vector<ComplexVec3> samples;
    samples.reserve(expected);
    std::string_view line;
    while (cur.next(line)) {
        const auto toks = split(line);
        if (samples.size() == expected)
            throw ParseError(cur.source, cur.line_no, toks.front().column,
                             "more samples than dims allow (" + std::to_string(expected) + ")");
        if (toks.size() != 6)
            throw ParseError(cur.source, cur.line_no, 1,
                             "sample line needs 6 reals, found " + std::to_string(toks.size()));
        ComplexVec3 s;
        for (std::size_t c = 0; c < 3; ++c)
            s[c] = Complex(parse_real(toks[2 * c], cur), parse_real(toks[2 * c + 1], cur));
        samples.push_back(s);
    }
    if (samples.size() != expected)
        throw ParseError(cur.source, cur.line_no, 1,
                         "dimension mismatch: " + std::to_string(samples.size()) + " samples, dims require " +
                             std::to_string(expected));
    return GridField(std::move(dims), origin, spacing, std::move(samples));
}

GridField load_grid_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot open grid field file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid_field(buf.str(), path.string());
}

namespace {

void append_real(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

} // namespace

std::string format_grid_field(const GridField& field) {
    std::string out;
    const std::size_t rank = field.rank();
    auto header = [&](const char* key, auto&& value_at) {
        out += key;
        for (std::size_t a = 0; a < rank; ++a) {
            out += ' ';
            value_at(a);
        }
        out += '\n';
    };
    header("dims", [&](std::size_t a) { out += std::to_string(field.dims()[a]); });
    header("origin", [&](std::size_t a) { append_real(out, field.origin()[a]); });
    header("spacing", [&](std::size_t a) { append_real(out, field.spacing()[a]); });
    out += "components 3\n";
    for (const auto& s : field.samples()) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (c)
                out += ' ';
            append_real(out, s[c].real());
            out += ' ';
            append_real(out, s[c].imag());
        }
        out += '\n';
    }
    return out;
}

void write_grid_field(const GridField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write grid field file '" + path.string() + "'");
    out << format_grid_field(field);
}

} // namespace purcell
