#include "tomokit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "tomokit/errors.hpp"

namespace tomokit {

Grid1D::Grid1D(double lo, double hi, int n) : min(lo), max(hi), points(n) {
    if (!(lo < hi)) throw ArgumentError("Grid1D: min must be < max");
    if (n < 2) throw ArgumentError("Grid1D: need at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ArgumentError("Grid1D: bounds must be finite");
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> xs(points);
    for (int i = 0; i < points; ++i) xs[i] = node(i);
    return xs;
}

Grid1D Grid1D::symmetric(double reach, int n) {
    double half = reach + 6.0;
    return Grid1D(-half, half, n);
}

bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.min == b.min && a.max == b.max && a.points == b.points;
}

double trapezoid(const Grid1D& g, std::span<const double> f) {
    if ((int)f.size() != g.points)
        throw ArgumentError("trapezoid: sample count does not match grid");
    double s = 0.5 * (f.front() + f.back());
    for (int i = 1; i < g.points - 1; ++i) s += f[i];
    return s * g.spacing();
}

cdouble trapezoid(const Grid1D& g, std::span<const cdouble> f) {
    if ((int)f.size() != g.points)
        throw ArgumentError("trapezoid: sample count does not match grid");
    cdouble s = 0.5 * (f.front() + f.back());
    for (int i = 1; i < g.points - 1; ++i) s += f[i];
    return s * g.spacing();
}

namespace {

template <typename T>
T cubic_impl(const Grid1D& g, std::span<const T> f, double x) {
    if (x < g.min || x > g.max) return T{};
    double h = g.spacing();
    double u = (x - g.min) / h;
    if (g.points < 4) { // linear fallback for tiny grids
        int i0 = std::clamp((int)std::floor(u), 0, g.points - 2);
        double t = u - i0;
        return f[i0] * (1.0 - t) + f[i0 + 1] * t;
    }
    int i = (int)std::floor(u);
    // centered 4-point Lagrange stencil, shifted inward at the ends
    i = std::clamp(i - 1, 0, g.points - 4);
    double t = u - (i + 1);
    T p0 = f[i], p1 = f[i + 1], p2 = f[i + 2], p3 = f[i + 3];
    double tm = t - 1.0, tp = t + 1.0, t2 = t - 2.0;
    return p0 * (-t * tm * t2 / 6.0) + p1 * (tp * tm * t2 / 2.0) +
           p2 * (-tp * t * t2 / 2.0) + p3 * (tp * t * tm / 6.0);
}

template <typename T>
T bilinear_impl(const Grid1D& gx, const Grid1D& gy, std::span<const T> f,
                double x, double y) {
    if (x < gx.min || x > gx.max || y < gy.min || y > gy.max) return T{};
    double ux = (x - gx.min) / gx.spacing();
    double uy = (y - gy.min) / gy.spacing();
    int i = std::clamp((int)std::floor(ux), 0, gx.points - 2);
    int j = std::clamp((int)std::floor(uy), 0, gy.points - 2);
    double tx = ux - i;
    double ty = uy - j;
    auto at = [&](int a, int b) { return f[(std::size_t)a * gy.points + b]; };
    return (1 - tx) * ((1 - ty) * at(i, j) + ty * at(i, j + 1)) +
           tx * ((1 - ty) * at(i + 1, j) + ty * at(i + 1, j + 1));
}

} // namespace

double interp_cubic(const Grid1D& g, std::span<const double> f, double x) {
    return cubic_impl(g, f, x);
}

cdouble interp_cubic(const Grid1D& g, std::span<const cdouble> f, double x) {
    return cubic_impl(g, f, x);
}

double interp_bilinear(const Grid1D& gx, const Grid1D& gy,
                       std::span<const double> f, double x, double y) {
    return bilinear_impl(gx, gy, f, x, y);
}

cdouble interp_bilinear(const Grid1D& gx, const Grid1D& gy,
                        std::span<const cdouble> f, double x, double y) {
    return bilinear_impl(gx, gy, f, x, y);
}

namespace {

template <typename T>
T bicubic_impl(const Grid1D& gx, const Grid1D& gy, std::span<const T> f,
               double x, double y) {
    if (x < gx.min || x > gx.max || y < gy.min || y > gy.max) return T{};
    if (gx.points < 4) return bilinear_impl(gx, gy, f, x, y);
    double ux = (x - gx.min) / gx.spacing();
    int i = std::clamp((int)std::floor(ux) - 1, 0, gx.points - 4);
    double t = ux - (i + 1);
    T ry[4];
    for (int r = 0; r < 4; ++r) {
        std::span<const T> row =
            f.subspan((std::size_t)(i + r) * gy.points, gy.points);
        ry[r] = cubic_impl(gy, row, y);
    }
    double tm = t - 1.0, tp = t + 1.0, t2 = t - 2.0;
    return ry[0] * (-t * tm * t2 / 6.0) + ry[1] * (tp * tm * t2 / 2.0) +
           ry[2] * (-tp * t * t2 / 2.0) + ry[3] * (tp * t * tm / 6.0);
}

} // namespace

double interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                      std::span<const double> f, double x, double y) {
    return bicubic_impl(gx, gy, f, x, y);
}

cdouble interp_bicubic(const Grid1D& gx, const Grid1D& gy,
                       std::span<const cdouble> f, double x, double y) {
    return bicubic_impl(gx, gy, f, x, y);
}

std::string axis_header(const Grid1D& g) {
    return "# axis: " + format_double(g.min) + " " + format_double(g.max) +
           " " + std::to_string(g.points);
}

Grid1D parse_axis_header(const std::string& line) {
    std::istringstream ss(line);
    std::string hash, word;
    double lo, hi;
    int n;
    if (!(ss >> hash >> word >> lo >> hi >> n) || hash != "#" ||
        word != "axis:")
        throw ArgumentError("parse_axis_header: malformed header '" + line +
                            "'");
    return Grid1D(lo, hi, n);
}

void write_samples_csv(std::ostream& os, const Grid1D& g,
                       std::span<const double> samples) {
    if ((int)samples.size() != g.points)
        throw ArgumentError("write_samples_csv: sample count mismatch");
    os << axis_header(g) << "\n";
    for (double v : samples) os << format_double(v) << "\n";
}

std::pair<Grid1D, std::vector<double>> read_samples_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw ArgumentError("read_samples_csv: missing header");
    Grid1D g = parse_axis_header(line);
    std::vector<double> samples;
    samples.reserve(g.points);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        samples.push_back(std::stod(line));
    }
    if ((int)samples.size() != g.points)
        throw ArgumentError("read_samples_csv: sample count mismatch");
    return {g, std::move(samples)};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace tomokit
