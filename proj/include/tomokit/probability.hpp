#pragma once

#include <functional>
#include <span>
#include <string>

#include "tomokit/grid.hpp"
#include "tomokit/reconstruction.hpp"
#include "tomokit/tomography.hpp"

// Joint probability construction over (X, mu, nu) via the Bayes formula and
// its inversion. The tomogram is a conditional distribution w(X | mu, nu);
// multiplying by any normalized parameter prior P(mu, nu) yields a genuine
// joint distribution, and the conditional (hence the state) is recovered by
// dividing out the X-marginal.

namespace tomokit {

using PriorFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

struct ParameterPrior {
    enum class Kind { gaussian, custom };
    Kind kind = Kind::gaussian;
    int modes = 1;
    PriorFn density;        // used for custom priors
    double domain_half = 0; // custom priors declare their support

    static ParameterPrior gaussian(int modes);
    static ParameterPrior custom(int modes, PriorFn density,
                                 double domain_half);

    double operator()(std::span<const double> mu,
                      std::span<const double> nu) const;

    // Quadrature check of int P dmu dnu = 1 for custom priors (the Gaussian
    // prior integrates to 1 analytically). Single mode only.
    double normalization(int points_per_axis = 121) const;
};

using JointDistribution = std::function<double(const TomographicQuery&)>;

// W(X, mu, nu) = w(X | mu, nu) P(mu, nu)
double joint_distribution(const CmTomogram& wcm, const ParameterPrior& prior,
                          const TomographicQuery& q);

JointDistribution make_joint(CmTomogram wcm, ParameterPrior prior);

// w(X | mu, nu) = W / int W dX. Throws a division-domain error when the
// marginal vanishes at (mu, nu).
double conditional_from_joint(const JointDistribution& joint,
                              const TomographicQuery& q, double x_half = 30.0,
                              int x_points = 1201);

// Conditional as a callable with a per-thread marginal cache, suitable for
// handing to density_from_cm_tomogram.
CmTomogram make_conditional(JointDistribution joint, double x_half = 30.0,
                            int x_points = 1201);

// Density matrix straight from a joint distribution; identical code path to
// density_from_cm_tomogram once the conditional is formed.
GridDensityMatrix density_from_joint(const JointDistribution& joint,
                                     const Grid1D& axis,
                                     const ReconstructionOptions& opts = {});

} // namespace tomokit
