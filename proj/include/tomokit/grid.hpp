#pragma once

#include <complex>
#include <iosfwd>
#include <utility>
#include <span>
#include <string>
#include <vector>

namespace tomokit {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Uniform 1-D grid over [min, max] with `points` nodes (endpoints included).
struct Grid1D {
    double min = -1.0;
    double max = 1.0;
    int points = 2;

    Grid1D() = default;
    Grid1D(double lo, double hi, int n);

    double spacing() const { return (max - min) / (points - 1); }
    double node(int i) const { return min + spacing() * i; }
    std::vector<double> nodes() const;
    bool contains(double x) const { return x >= min && x <= max; }

    // Symmetric grid wide enough for states displaced by up to `reach`,
    // leaving a 6-sigma vacuum tail on each side.
    static Grid1D symmetric(double reach, int n = 128);
};

bool operator==(const Grid1D& a, const Grid1D& b);

// Composite trapezoid weight of node i.
inline double trapezoid_weight(const Grid1D& g, int i) {
    double h = g.spacing();
    return (i == 0 || i == g.points - 1) ? 0.5 * h : h;
}

double trapezoid(const Grid1D& g, std::span<const double> f);
cdouble trapezoid(const Grid1D& g, std::span<const cdouble> f);

// Catmull-Rom cubic interpolation of uniformly sampled data; clamps the
// stencil at the ends and returns 0 outside the grid.
double interp_cubic(const Grid1D& g, std::span<const double> f, double x);
cdouble interp_cubic(const Grid1D& g, std::span<const cdouble> f, double x);

// Bilinear interpolation on a row-major (nx x ny) table; 0 outside.
double interp_bilinear(const Grid1D& gx, const Grid1D& gy,
                       std::span<const double> f, double x, double y);
cdouble interp_bilinear(const Grid1D& gx, const Grid1D& gy,
                        std::span<const cdouble> f, double x, double y);

// Separable 4-point Lagrange interpolation on a row-major (nx x ny) table.
double interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                      std::span<const double> f, double x, double y);
cdouble interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                       std::span<const cdouble> f, double x, double y);

// Grid serialization: one-line header `# axis: min max points`, then one
// sample per line.
std::string axis_header(const Grid1D& g);
Grid1D parse_axis_header(const std::string& line);
void write_samples_csv(std::ostream& os, const Grid1D& g,
                       std::span<const double> samples);
std::pair<Grid1D, std::vector<double>> read_samples_csv(std::istream& is);

// 17-significant-digit decimal formatting (round trips doubles exactly).
std::string format_double(double v);

} // namespace tomokit
