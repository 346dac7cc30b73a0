#include "tomokit/oputil.hpp"

#include <algorithm>
#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

GridOperator GridOperator::projector(const Grid1D& axis,
                                     const Eigen::VectorXcd& psi) {
    if (psi.size() != axis.points)
        throw ArgumentError("projector: sample count does not match axis");
    GridOperator op;
    op.axis = axis;
    op.kernel = psi * psi.adjoint();
    return op;
}

GridOperator multiply(const GridOperator& a, const GridOperator& b) {
    if (!(a.axis == b.axis))
        throw ArgumentError("multiply: operators live on different axes");
    GridOperator out;
    out.axis = a.axis;
    out.kernel = a.kernel * b.kernel * a.axis.spacing();
    return out;
}

GridOperator adjoint(const GridOperator& a) {
    return GridOperator{a.axis, a.kernel.adjoint()};
}

cdouble trace(const GridOperator& a) {
    cdouble t = 0.0;
    for (int i = 0; i < a.axis.points; ++i)
        t += trapezoid_weight(a.axis, i) * a.kernel(i, i);
    return t;
}

cdouble displacement_trace(const GridOperator& op, double a, double b) {
    // midpoint form int A(y - b/2, y + b/2) e^{-i a y} dy; the symmetric
    // argument placement makes Tr[A e^{-i(aq+bp)}] and its Hermitian
    // conjugate at (-a, -b) exactly conjugate for Hermitian kernels
    const Grid1D& g = op.axis;
    const int n = g.points;
    std::span<const cdouble> flat(op.kernel.data(), (std::size_t)n * n);
    cdouble acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double y = g.node(i);
        double xl = y - 0.5 * b;
        double xr = y + 0.5 * b;
        if (xl < g.min || xl > g.max || xr < g.min || xr > g.max) continue;
        // column-major kernel: the flat span is row-major in the transposed
        // index order, so the slots are swapped
        cdouble v = interp_bicubic(g, g, flat, xr, xl);
        acc += trapezoid_weight(g, i) * v * std::exp(cdouble(0.0, -a * y));
    }
    return acc;
}

KWindow default_k_window(double sigma, double x_abs) {
    double s = std::max(sigma, 0.05);
    double k_max = std::clamp(13.0 / std::sqrt(s), 4.0, 80.0);
    double dk = kPi / (4.0 * std::max(x_abs, 1.5));
    int n = (int)std::ceil(2.0 * k_max / dk) + 1;
    n = std::clamp(n | 1, 201, 4001); // odd count keeps a k = 0 node
    return KWindow{k_max, n};
}

cdouble cm_symbol(const GridOperator& op, double X, double mu, double nu) {
    double sigma = mu * mu + nu * nu;
    return cm_symbol(op, X, mu, nu, default_k_window(sigma, std::abs(X)));
}

cdouble cm_symbol(const GridOperator& op, double X, double mu, double nu,
                  const KWindow& kw) {
    if (mu == 0.0 && nu == 0.0)
        throw ArgumentError("cm_symbol: (mu, nu) = (0, 0) is degenerate");
    Grid1D kg(-kw.k_max, kw.k_max, kw.points);
    std::vector<cdouble> f(kw.points);
    for (int i = 0; i < kw.points; ++i) {
        double k = kg.node(i);
        f[i] = std::exp(cdouble(0.0, k * X)) *
               displacement_trace(op, k * mu, k * nu);
    }
    return trapezoid(kg, f) / kTwoPi;
}

cdouble dual_cm_symbol(const GridOperator& op, double X, double mu,
                       double nu) {
    return std::exp(cdouble(0.0, X)) * displacement_trace(op, mu, nu) / kTwoPi;
}

} // namespace tomokit
