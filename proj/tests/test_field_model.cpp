#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "purcell/field_model.hpp"

using namespace purcell;

namespace {

GridField ramp_grid() {
    // 3x2 2D grid, Ey = (i + 10 j) + i*(j - i).
    std::vector<ComplexVec3> s;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            s.push_back({Complex{}, Complex(double(i) + 10.0 * double(j), double(j) - double(i)), Complex{}});
    return GridField({3, 2}, {-10.0, 0.0, 0.0}, {5.0, 20.0, 1.0}, s);
}

} // namespace

TEST_CASE("analytic surrogate values") {
    const AnalyticSurrogate s{AnalyticSurrogateParams{}};
    const ComplexVec3 c = s.at({0, 0, 0});
    CHECK(c[1] == Complex(1.0, 0.0));
    CHECK(c[0] == Complex{});
    CHECK(c[2] == Complex{});
    // Sign change at x0 = 160 nm.
    CHECK(s.at({150, 0, 0})[1].real() > 0.0);
    CHECK(std::abs(s.at({160, 0, 0})[1].real()) < 1e-15);
    CHECK(s.at({170, 0, 0})[1].real() < 0.0);
    const double expected = std::cos(kPi * 80.0 / 320.0) * std::exp(-80.0 * 80.0 / (2 * 400.0 * 400.0) - 30.0 * 30.0 / (2 * 120.0 * 120.0));
    CHECK(s.at({80, 30, 99})[1].real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(s.at({80, 30, 0})[1] == s.at({-80, -30, 0})[1]);
}

TEST_CASE("surrogate centre offset and amplitude") {
    AnalyticSurrogateParams p;
    p.center = Position(300.0, -40.0, 0.0);
    p.amplitude = Complex(0.0, 2.0);
    const AnalyticSurrogate s{p};
    CHECK(s.at({300.0, -40.0, 0.0})[1] == Complex(0.0, 2.0));
    AnalyticSurrogateParams bad;
    bad.sigma_x = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("grid interpolation is exact at nodes and bilinear inside") {
    const GridField g = ramp_grid();
    CHECK(g.at({-10.0, 0.0, 0.0})[1] == g.node(0, 0)[1]);
    CHECK(g.at({0.0, 20.0, 7.0})[1] == g.node(2, 1)[1]);
    CHECK(g.spacing()[2] == 0.0);
    // Cell centre equals the mean of its four corners.
    const Complex mean = (g.node(0, 0)[1] + g.node(1, 0)[1] + g.node(0, 1)[1] + g.node(1, 1)[1]) / 4.0;
    const Complex mid = g.at({-7.5, 10.0, 0.0})[1];
    CHECK(std::abs(mid - mean) < 1e-14);
    // Linear data reproduced anywhere.
    CHECK(std::abs(g.at({-3.0, 4.0, 0.0})[1] - Complex(1.4 + 2.0, 0.2 - 1.4)) < 1e-14);
}

TEST_CASE("grid queries outside the domain throw") {
    const GridField g = ramp_grid();
    CHECK_THROWS_AS(g.at({-10.001, 0.0, 0.0}), OutOfDomain);
    CHECK_THROWS_AS(g.at({0.0, 20.5, 0.0}), OutOfDomain);
    CHECK_THROWS_AS(GridField({2, 2}, {0, 0, 0}, {1, 1, 1}, std::vector<ComplexVec3>(3)), InvalidArgument);
}

TEST_CASE("grid field text round trip is lossless") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    std::vector<ComplexVec3> s(8 * 8);
    for (auto& v : s)
        for (auto& c : v) c = Complex(g(rng), g(rng));
    const GridField field({8, 8}, {-35.0, -35.0, 0.0}, {10.0, 10.0, 1.0}, s);
    const auto path = std::filesystem::temp_directory_path() / "purcell_grid_roundtrip.txt";
    write_grid_field(field, path);
    const GridField back = load_grid_field(path);
    std::filesystem::remove(path);
    CHECK(back.dims() == field.dims());
    CHECK(back.origin() == field.origin());
    CHECK(back.spacing() == field.spacing());
    CHECK(back.samples() == field.samples());
}

TEST_CASE("grid parser reports location of bad input") {
    const std::string text =
        "dims 2 2\n"
        "origin 0 0\n"
        "spacing 1 1\n"
        "# Ey = 1 everywhere\n"
        "components 3\n"
        "0 0 1 0 0 0\n"
        "0 0 1 0 0 0\n"
        "0 0 1 0 0 0\n"
        "0 0 nan 0 0 0\n";
    try {
        parse_grid_field(text, "f.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 9);
        CHECK(e.column() == 5);
        CHECK(std::string(e.what()).find("f.txt:9:5:") == 0);
    }
    CHECK_THROWS_AS(parse_grid_field("dims 2 2\norigin 0 0\nspacing 1 1\ncomponents 3\n0 0 0 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(load_grid_field("/nonexistent/purcell_field.txt"), InvalidArgument);
}
