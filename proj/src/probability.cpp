#include "tomokit/probability.hpp"

#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

ParameterPrior ParameterPrior::gaussian(int modes) {
    ParameterPrior p;
    p.kind = Kind::gaussian;
    p.modes = modes;
    return p;
}

ParameterPrior ParameterPrior::custom(int modes, PriorFn density,
                                      double domain_half) {
    if (!density || domain_half <= 0.0)
        throw ArgumentError(
            "ParameterPrior::custom: need a density and its domain half-width");
    ParameterPrior p;
    p.kind = Kind::custom;
    p.modes = modes;
    p.density = std::move(density);
    p.domain_half = domain_half;
    return p;
}

double ParameterPrior::operator()(std::span<const double> mu,
                                  std::span<const double> nu) const {
    if ((int)mu.size() != modes || (int)nu.size() != modes)
        throw ArgumentError("ParameterPrior: mode count mismatch");
    if (kind == Kind::gaussian) {
        double s = 0.0;
        for (double v : mu) s += v * v;
        for (double v : nu) s += v * v;
        return std::pow(kPi, -modes) * std::exp(-s);
    }
    double v = density(mu, nu);
    if (v < 0.0)
        throw ArgumentError("ParameterPrior: custom density went negative");
    return v;
}

double ParameterPrior::normalization(int points_per_axis) const {
    if (kind == Kind::gaussian) return 1.0;
    if (modes != 1)
        throw NotImplementedError(
            "ParameterPrior::normalization: single mode only");
    Grid1D g(-domain_half, domain_half, points_per_axis);
    double acc = 0.0;
    for (int i = 0; i < g.points; ++i) {
        double mu[1] = {g.node(i)};
        for (int j = 0; j < g.points; ++j) {
            double nu[1] = {g.node(j)};
            acc += trapezoid_weight(g, i) * trapezoid_weight(g, j) *
                   density(std::span<const double>(mu, 1),
                           std::span<const double>(nu, 1));
        }
    }
    return acc;
}

double joint_distribution(const CmTomogram& wcm, const ParameterPrior& prior,
                          const TomographicQuery& q) {
    if (prior.kind == ParameterPrior::Kind::custom) {
        double norm = prior.normalization();
        if (std::abs(norm - 1.0) > 1e-6)
            throw ArgumentError(
                "joint_distribution: custom prior is not normalized (int P = " +
                format_double(norm) + ")");
    }
    double p = prior(q.mu, q.nu);
    if (p == 0.0) return 0.0;
    return wcm(q) * p;
}

JointDistribution make_joint(CmTomogram wcm, ParameterPrior prior) {
    if (prior.kind == ParameterPrior::Kind::custom) {
        double norm = prior.normalization();
        if (std::abs(norm - 1.0) > 1e-6)
            throw ArgumentError("make_joint: custom prior is not normalized");
    }
    return [wcm = std::move(wcm), prior = std::move(prior)](
               const TomographicQuery& q) {
        double p = prior(q.mu, q.nu);
        if (p == 0.0) return 0.0;
        return wcm(q) * p;
    };
}

namespace {

// int W dX along the tomogram direction; nodes scale with sqrt(sigma) so
// the profile stays resolved for any query (x_half is in profile widths).
double joint_marginal(const JointDistribution& joint,
                      const TomographicQuery& q, double x_half,
                      int x_points) {
    const double s = std::sqrt(q.sigma());
    Grid1D xg(-x_half, x_half, x_points);
    double acc = 0.0;
    for (int i = 0; i < xg.points; ++i)
        acc += trapezoid_weight(xg, i) *
               joint(TomographicQuery(s * xg.node(i), q.mu, q.nu));
    return acc * s;
}

} // namespace

double conditional_from_joint(const JointDistribution& joint,
                              const TomographicQuery& q, double x_half,
                              int x_points) {
    double m = joint_marginal(joint, q, x_half, x_points);
    if (m <= 0.0)
        throw ArgumentError(
            "conditional_from_joint: X-marginal vanishes at (mu, nu)");
    return joint(q) / m;
}

CmTomogram make_conditional(JointDistribution joint, double x_half,
                            int x_points) {
    // reconstruction sweeps X with (mu, nu) fixed, so a last-value marginal
    // cache per thread removes the repeated X-integral
    return [joint = std::move(joint), x_half, x_points](
               const TomographicQuery& q) {
        thread_local std::vector<double> key;
        thread_local double cached = -1.0;
        std::vector<double> probe;
        probe.reserve(q.mu.size() * 2);
        probe.insert(probe.end(), q.mu.begin(), q.mu.end());
        probe.insert(probe.end(), q.nu.begin(), q.nu.end());
        if (probe != key || cached < 0.0) {
            key = probe;
            cached = joint_marginal(joint, q, x_half, x_points);
        }
        if (cached <= 0.0)
            throw ArgumentError(
                "conditional: X-marginal vanishes at (mu, nu)");
        return joint(q) / cached;
    };
}

GridDensityMatrix density_from_joint(const JointDistribution& joint,
                                     const Grid1D& axis,
                                     const ReconstructionOptions& opts) {
    return density_from_cm_tomogram(make_conditional(joint), axis, opts);
}

} // namespace tomokit
