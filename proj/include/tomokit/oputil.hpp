#pragma once

#include <Eigen/Dense>

#include "tomokit/grid.hpp"
#include "tomokit/states.hpp"

// Single-mode operators represented by position kernels A(x, x') on a grid,
// and the trace formulas used to turn them into tomographic symbols. These
// routes never touch the star-product kernel code, so they double as
// independent oracles in the test suites.

namespace tomokit {

struct GridOperator {
    Grid1D axis;
    Eigen::MatrixXcd kernel; // kernel(i, j) = A(x_i, x_j)

    static GridOperator projector(const Grid1D& axis,
                                  const Eigen::VectorXcd& psi);
};

inline GridOperator as_operator(const GridDensityMatrix& rho) {
    return GridOperator{rho.axis, rho.samples};
}

// Operator product AB; the integral over the shared coordinate is a
// trapezoid-weighted matrix product.
GridOperator multiply(const GridOperator& a, const GridOperator& b);

GridOperator adjoint(const GridOperator& a);

cdouble trace(const GridOperator& a);

// Tr[A e^{-i(a q + b p)}] = e^{-i a b / 2} int A(x, x + b) e^{-i a x} dx.
// The second kernel argument is interpolated along rows (cubic).
cdouble displacement_trace(const GridOperator& op, double a, double b);

// Quadrature window for the auxiliary k-integrals that resolve the delta in
// the center-of-mass dequantizer.
struct KWindow {
    double k_max;
    int points;
};

// Window matched to e^{-k^2 sigma / 4} decay and e^{ikX} oscillation.
KWindow default_k_window(double sigma, double x_abs);

// Center-of-mass symbol of a grid operator:
//   w_A(X, mu, nu) = (2 pi)^{-1} int dk e^{ikX} Tr[A e^{-ik(mu q + nu p)}].
cdouble cm_symbol(const GridOperator& op, double X, double mu, double nu);
cdouble cm_symbol(const GridOperator& op, double X, double mu, double nu,
                  const KWindow& kw);

// Dual center-of-mass symbol (2 pi)^{-1} e^{iX} Tr[A e^{-i(mu q + nu p)}].
cdouble dual_cm_symbol(const GridOperator& op, double X, double mu, double nu);

} // namespace tomokit
