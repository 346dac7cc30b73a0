#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "tomokit/errors.hpp"
#include "tomokit/grid.hpp"

using namespace tomokit;

TEST_SUITE_BEGIN("grid");

TEST_CASE("grid construction validates bounds") {
    CHECK_THROWS_AS(Grid1D(1.0, -1.0, 16), ArgumentError);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), ArgumentError);
    Grid1D g(-2.0, 2.0, 5);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.node(0) == -2.0);
    CHECK(g.node(4) == 2.0);
}

TEST_CASE("trapezoid integrates a gaussian to spectral accuracy") {
    Grid1D g(-8.0, 8.0, 129);
    std::vector<double> f(g.points);
    for (int i = 0; i < g.points; ++i) f[i] = std::exp(-g.node(i) * g.node(i));
    CHECK(trapezoid(g, f) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("cubic interpolation reproduces smooth samples") {
    Grid1D g(-4.0, 4.0, 81);
    std::vector<double> f(g.points);
    for (int i = 0; i < g.points; ++i) f[i] = std::sin(g.node(i));
    for (double x : {-3.217, -0.6, 0.05, 1.9431})
        CHECK(interp_cubic(g, std::span<const double>(f), x) ==
              doctest::Approx(std::sin(x)).epsilon(5e-6));
    CHECK(interp_cubic(g, std::span<const double>(f), 5.0) == 0.0);
}

TEST_CASE("bilinear interpolation is exact for bilinear data") {
    Grid1D gx(0.0, 2.0, 11), gy(-1.0, 1.0, 21);
    std::vector<double> f((std::size_t)gx.points * gy.points);
    for (int i = 0; i < gx.points; ++i)
        for (int j = 0; j < gy.points; ++j)
            f[(std::size_t)i * gy.points + j] =
                2.0 + 3.0 * gx.node(i) - gy.node(j) +
                0.5 * gx.node(i) * gy.node(j);
    auto at = [&](double x, double y) {
        return interp_bilinear(gx, gy, std::span<const double>(f), x, y);
    };
    CHECK(at(0.73, 0.31) ==
          doctest::Approx(2.0 + 3.0 * 0.73 - 0.31 + 0.5 * 0.73 * 0.31)
              .epsilon(1e-13));
    CHECK(at(-0.1, 0.0) == 0.0);
}

TEST_CASE("axis header round trip") {
    Grid1D g(-6.25, 6.25, 128);
    Grid1D back = parse_axis_header(axis_header(g));
    CHECK(back.min == g.min);
    CHECK(back.max == g.max);
    CHECK(back.points == g.points);
}

TEST_CASE("grid sample CSV round trip") {
    Grid1D g(-3.0, 3.0, 25);
    std::vector<double> f(g.points);
    for (int i = 0; i < g.points; ++i) f[i] = std::cos(g.node(i)) / 3.0;
    std::stringstream ss;
    write_samples_csv(ss, g, std::span<const double>(f));
    auto [back, vals] = read_samples_csv(ss);
    CHECK(back == g);
    REQUIRE(vals.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(vals[i] == f[i]);
}

TEST_CASE("format_double round trips") {
    for (double v : {1.0 / 3.0, 0.5641895835477563, -2.5e-17}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_SUITE_END();
