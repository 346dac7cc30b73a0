#pragma once

#include <functional>

#include "tomokit/grid.hpp"
#include "tomokit/oputil.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/states.hpp"
#include "tomokit/tomography.hpp"

// Inverse maps from tomograms to density operators, dual symbols, mean
// values, and purity/entropy functionals, all for single-mode states unless
// stated otherwise.

namespace tomokit {

// Symbol of an operator in the dual center-of-mass representation,
//   w^d_A(X, mu, nu) = (2 pi)^{-1} e^{iX} Phi_A(mu, nu),
// carried through its characteristic function Phi_A(a, b) =
// Tr[A e^{-i(a q + b p)}]. The identity's Phi is a delta, kept analytic.
struct DualSymbol {
    std::function<cdouble(double a, double b)> char_fn;
    bool identity = false;
    std::string tag;

    cdouble operator()(const TomographicQuery& q) const;
};

DualSymbol dual_symbol_of(GridOperator op, std::string tag = "operator");
DualSymbol dual_symbol_identity();

// Direct dual-symbol evaluation for a grid operator (trace route).
cdouble dual_symbol(const GridOperator& op, const TomographicQuery& q);

// The X-profile transforms run on sqrt(sigma)-scaled nodes (fourier_profile)
// so the z window is measured in profile widths, not absolute quadratures.
struct ReconstructionOptions {
    double z_half = 25.0;
    int z_points = 501;
    double mu_half = 10.0;
    int mu_points = 321;
    Exec exec = Exec::parallel;
};

// Inverse center-of-mass map for a single mode: the nu integral collapses
// through the position matrix element, leaving
//   rho(x, x') = (2 pi)^{-1} int dX dmu w(X, mu, x - x') e^{iX}
//                e^{-i mu (x + x')/2}.
GridDensityMatrix density_from_cm_tomogram(
    const CmTomogram& wcm, const Grid1D& axis,
    const ReconstructionOptions& opts = {});

struct MeanOptions {
    double mu_half = 8.0;
    int mu_points = 161;
    double z_half = 25.0;
    int z_points = 401;
    Exec exec = Exec::parallel;
};

// <A> = int w_cm w^d_A dX dmu dnu; imag_residual (if given) receives the
// magnitude of the imaginary part, which vanishes for Hermitian A.
double mean_value(const CmTomogram& wcm, const DualSymbol& wd,
                  const MeanOptions& opts = {},
                  double* imag_residual = nullptr);

// int X^n w dX; order 1 gives mu<q> + nu<p>, order 2 gives <(mu q + nu p)^2>.
double moments_from_tomogram(const CmTomogram& wcm,
                             const std::vector<double>& mu,
                             const std::vector<double>& nu, int order,
                             double x_half = 30.0, int x_points = 1201);

struct PurityOptions {
    double mu_half = 8.0;
    int mu_points = 161;
    double z_half = 25.0;
    int z_points = 401;
    Exec exec = Exec::parallel;
};

// Tr rho_1^2 from a center-of-mass tomogram. With modes = 2 the callable is
// the joint tomogram and the subsystem profile is taken at padded queries
// (mu, 0, nu, 0); with modes = 1 the callable is already the reduced
// tomogram. The linear entropy is 1 - purity.
double purity_from_cm(const CmTomogram& wcm, int modes = 2,
                      const PurityOptions& opts = {});

} // namespace tomokit
