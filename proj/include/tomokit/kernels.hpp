#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/oputil.hpp"
#include "tomokit/parallel.hpp"

// Star-product kernels with delta constraints, transition kernels between
// maps, dual kernels, and the classical pointwise limit.
//
// Delta factors are never smoothed numerically: kernel evaluations return a
// smooth prefactor together with the list of linear constraints the deltas
// impose, and contractions eliminate the deltas analytically.

namespace tomokit {

// coefficients . unknowns + offset = 0 inside a delta. A fully resolved
// constraint has no unknowns left; its offset is the residual.
struct LinearConstraint {
    std::vector<double> coefficients;
    double offset = 0.0;

    double residual() const { return offset; }
};

struct ConstrainedKernelValue {
    // Smooth coefficient multiplying the product of delta factors, with all
    // elimination Jacobians already folded in.
    cdouble prefactor;
    std::vector<LinearConstraint> constraints;
    double jacobian = 1.0; // product of 1/|det| factors applied so far

    double max_residual() const;
    bool on_support(double tol = 1e-12) const { return max_residual() <= tol; }
};

// One argument triple (X, mu, nu) of a kernel slot.
struct CmTriple {
    double X = 0.0;
    std::vector<double> mu;
    std::vector<double> nu;
};

// ---------------------------------------------------------------------------
// Kernel evaluations

// Groenewold kernel pi^{-2N} exp 2i sum_j (q1 p2 - q2 p1 + q2 p3 - q3 p2
// + q3 p1 - q1 p3); |value| = pi^{-2N} for all arguments.
cdouble eval_groenewold_kernel(std::span<const double> q1,
                               std::span<const double> p1,
                               std::span<const double> q2,
                               std::span<const double> p2,
                               std::span<const double> q3,
                               std::span<const double> p3);

// Two-mode center-of-mass kernel: smooth prefactor and the three ratio
// constraints left after the k-integration. All four third-slot components
// must be nonzero.
ConstrainedKernelValue eval_cm_kernel_two_modes(const CmTriple& x1,
                                                const CmTriple& x2,
                                                const CmTriple& x3);

// Dual center-of-mass kernel for N = 1. The two deltas fix (k1, k2); the
// returned value is fully resolved (no constraints).
ConstrainedKernelValue eval_dual_cm_kernel(const CmTriple& x2,
                                           const CmTriple& x1,
                                           const CmTriple& x);

// One symplectic-map argument triple (vector X).
struct SymplecticTriple {
    std::vector<double> X;
    std::vector<double> mu;
    std::vector<double> nu;
};

enum class TransitionDirection {
    cm_to_symplectic, // Tr[D_cm(cm) U_s(s)]
    symplectic_to_cm, // Tr[D_s(s) U_cm(cm)]
};

// Transition kernels between the symplectic and center-of-mass maps; the
// direction selects which slot provides the quantizer.
ConstrainedKernelValue transition_kernel(TransitionDirection dir,
                                         const CmTriple& cm,
                                         const SymplecticTriple& s);

// ---------------------------------------------------------------------------
// Characteristic-function machinery for kernel contractions
//
// The quantum characteristic function Phi(a, b) = Tr[A e^{-i(a q + b p)}]
// carries the same information as the cm symbol:
//   w_A(X, mu, nu) = (2 pi)^{-1} int dk e^{ikX} Phi(k mu, k nu).
// Star products contract to twisted convolutions of characteristic
// functions once the kernel deltas are eliminated analytically.

using CmSymbolFn = std::function<cdouble(double X, double mu, double nu)>;

struct CharGrid {
    Grid1D lattice; // shared by both axes
    Eigen::MatrixXcd values; // values(ia, ib) = Phi(a_i, b_j)
    bool identity = false;   // Phi = 2 pi delta(a) delta(b), kept analytic

    cdouble at(double a, double b) const; // bicubic off-lattice
};

CharGrid char_identity();
CharGrid char_from_operator(const GridOperator& op, const Grid1D& lattice,
                            Exec exec = Exec::parallel);
// Phi(a, b) = int f(Y, -a, -b) e^{iY} dY for a cm symbol callable.
CharGrid char_from_cm_symbol(const CmSymbolFn& f, const Grid1D& lattice,
                             double x_half = 30.0, int x_points = 1201,
                             Exec exec = Exec::parallel);

// Twisted convolution Phi_AB(mu, nu) =
//   (2 pi)^{-1} int Phi_A(a, b) Phi_B(mu - a, nu - b)
//                  e^{-(i/2)(a nu - b mu)} da db,
// evaluated exactly on the lattice (the shifts land on nodes).
CharGrid twisted_convolution(const CharGrid& a, const CharGrid& b,
                             Exec exec = Exec::parallel);

// Reconstruct a cm symbol value from a characteristic grid.
cdouble cm_symbol_from_char(const CharGrid& phi, double X, double mu,
                            double nu, double k_half = 0.0, int k_points = 0);

// Center-of-mass star product of two symbols given by their characteristic
// grids (i.e. the contraction of Eq-cm-kernel deltas in closed form).
cdouble star_product_cm_symbols(const CharGrid& a, const CharGrid& b, double X,
                                double mu, double nu);

// Dual-map star product: w^d_AB(X, mu, nu) =
//   (2 pi)^{-1} e^{iX} Phi_AB(mu, nu).
cdouble dual_star_product(const CharGrid& a, const CharGrid& b, double X,
                          double mu, double nu);

// ---------------------------------------------------------------------------
// Two-mode star product from separable characteristic factors, with the
// symplectic phase optionally removed (the classical pointwise limit).

struct TwoModeStarOptions {
    bool symplectic_phase = true;
    std::vector<double> epsilons = {1e-2, 1e-3, 1e-4};
    double k_half = 16.0;
    int k_points = 321;
};

cdouble cm_star_two_mode_separable(const CharGrid& a1, const CharGrid& a2,
                                   const CharGrid& b1, const CharGrid& b2,
                                   double X, std::array<double, 2> mu,
                                   std::array<double, 2> nu,
                                   const TwoModeStarOptions& opts = {});

// ---------------------------------------------------------------------------
// Center-of-mass kernel from the Groenewold kernel (regulated)

// Pointwise evaluation of the regulated 12-dimensional integral relating the
// Groenewold and center-of-mass kernels, reduced analytically to Gaussian
// integrals. Diverges on the delta support as eps -> 0 by construction.
cdouble cm_kernel_from_groenewold_regulated(const CmTriple& x1,
                                            const CmTriple& x2,
                                            const CmTriple& x3, double eps);

// Integral of the regulated kernel over the three delta-constraint
// residuals, Richardson-extrapolated over eps. Comparable on-support with
// the smooth prefactor of eval_cm_kernel_two_modes.
cdouble cm_kernel_from_groenewold_reduced(
    const CmTriple& x1, const CmTriple& x2, const CmTriple& x3,
    std::span<const double> epsilons, int nodes_per_axis = 41,
    Exec exec = Exec::parallel);

} // namespace tomokit
