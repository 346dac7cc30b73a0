#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/oputil.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/states.hpp"

// Wigner functions, Weyl symbols, reconstruction from Weyl symbols, and the
// Groenewold star product on grids. Conventions follow
//   W(q, p) = int e^{-i p u} <q + u/2| rho |q - u/2> du,
// so int W dq dp / (2 pi)^N = 1 and the single-mode vacuum peaks at 2.

namespace tomokit {

struct PhaseSpaceGrid {
    std::vector<Grid1D> q;
    std::vector<Grid1D> p;

    int modes() const { return (int)q.size(); }

    // Position axes copied from the wavefunction, momentum axes with the
    // same extent. Emits a Nyquist warning (stderr, once per grid) when the
    // momentum extent is below pi / dx.
    static PhaseSpaceGrid for_wavefunction(const GridWavefunction& psi,
                                           int p_points = 0);
};

struct WignerGrid {
    PhaseSpaceGrid grid;
    std::vector<double> samples; // row-major [q1][p1]([q2][p2])
    double imag_residual = 0.0;  // max |Im| of the defining integral

    double normalization() const; // int W / (2 pi)^N
    // Bilinear interpolation, single mode only.
    double value(double q, double p) const;
};

struct WeylSymbolGrid {
    Grid1D q;
    Grid1D p;
    Eigen::MatrixXcd samples; // samples(iq, ip)
    bool constant_tag = false; // analytic constant symbol (e.g. identity)

    static WeylSymbolGrid constant(const Grid1D& q, const Grid1D& p,
                                   cdouble value);
    double max_abs() const { return samples.cwiseAbs().maxCoeff(); }
    double edge_max_abs() const;
};

// Cross-Wigner transform of two single-mode grid functions,
//   W_{fg}(q, p) = int f(q + u/2) conj(g(q - u/2)) e^{-i p u} du,
// evaluated exactly on the nodes (the u-quadrature nodes are chosen so both
// arguments land on grid points).
Eigen::MatrixXcd cross_wigner(const Grid1D& axis, const Eigen::VectorXcd& f,
                              const Eigen::VectorXcd& g, const Grid1D& pgrid,
                              Exec exec = Exec::parallel);

// Wigner function of a discretized pure state (1 or 2 modes). Two-mode
// states go through a Schmidt decomposition so the 4-D array is assembled
// from per-mode cross-Wigner factors.
WignerGrid wigner_from_wavefunction(const GridWavefunction& psi,
                                    const PhaseSpaceGrid& grid,
                                    Exec exec = Exec::parallel);

// Weyl symbol of a single-mode grid operator. The q-axis must align with
// the operator axis nodes or their midpoints; off-node q values fall back
// to bilinear interpolation of the kernel.
WeylSymbolGrid weyl_symbol(const GridOperator& op, const Grid1D& q,
                           const Grid1D& p, Exec exec = Exec::parallel);

// Inverse Weyl map A(x, x') = (2 pi)^{-1} int w((x+x')/2, p) e^{i p (x-x')} dp.
// Use a symbol q-grid at half the axis spacing so every midpoint is a node.
GridOperator operator_from_weyl(const WeylSymbolGrid& w, const Grid1D& axis,
                                Exec exec = Exec::parallel);

// Max-norm residual of the round trip operator -> symbol -> operator,
// normalized by the kernel peak. Diagnostic for under-resolved grids.
double weyl_roundtrip_residual(const GridOperator& op, const Grid1D& q,
                               const Grid1D& p);

// Groenewold star product of two single-mode Weyl symbols on a shared grid.
// Symbols must decay at the grid edge (magnitude below edge_tol) unless
// tagged constant.
WeylSymbolGrid groenewold_star(const WeylSymbolGrid& wa,
                               const WeylSymbolGrid& wb,
                               double edge_tol = 1e-10,
                               Exec exec = Exec::parallel);

// Star product evaluated at a single phase-space point. Useful for wide,
// weakly damped windows where the full output grid would be prohibitive.
cdouble groenewold_star_at(const WeylSymbolGrid& wa, const WeylSymbolGrid& wb,
                           double q3, double p3, double edge_tol = 1e-10,
                           Exec exec = Exec::parallel);

} // namespace tomokit
