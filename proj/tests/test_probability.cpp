#include <doctest.h>

#include <cmath>
#include <random>

#include "tomokit/errors.hpp"
#include "tomokit/probability.hpp"
#include "tomokit/states.hpp"

using namespace tomokit;

namespace {

CmTomogram vacuum_tomogram() {
    CoherentState s({0.0});
    return [s](const TomographicQuery& q) {
        return cm_tomogram_analytic(s, q);
    };
}

// a wider, still normalized Gaussian prior (single mode)
ParameterPrior wide_prior() {
    return ParameterPrior::custom(
        1,
        [](std::span<const double> mu, std::span<const double> nu) {
            double s = mu[0] * mu[0] + nu[0] * nu[0];
            return std::exp(-0.5 * s) / (2.0 * kPi);
        },
        14.0);
}

} // namespace

TEST_SUITE_BEGIN("probability");

TEST_CASE("gaussian prior density and normalization") {
    ParameterPrior p = ParameterPrior::gaussian(1);
    double mu[1] = {1.0}, nu[1] = {0.0};
    CHECK(p(std::span<const double>(mu, 1), std::span<const double>(nu, 1)) ==
          doctest::Approx(std::exp(-1.0) / kPi).epsilon(1e-14));
    CHECK(p.normalization() == 1.0);
    CHECK(wide_prior().normalization() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("joint distribution values and marginals") {
    CmTomogram w = vacuum_tomogram();
    ParameterPrior p = ParameterPrior::gaussian(1);

    TomographicQuery q(0.0, {1.0}, {0.0});
    CHECK(joint_distribution(w, p, q) ==
          doctest::Approx(std::exp(-1.0) / (kPi * std::sqrt(kPi)))
              .epsilon(1e-6));

    // int W dX recovers the prior pointwise
    JointDistribution joint = make_joint(w, p);
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-1.6, 1.6);
    for (int t = 0; t < 12; ++t) {
        double mu = u(rng), nu = u(rng);
        if (mu * mu + nu * nu < 0.1) mu += 0.5;
        Grid1D xg(-30.0, 30.0, 1201);
        double m = 0.0;
        double s = std::hypot(mu, nu);
        for (int i = 0; i < xg.points; ++i)
            m += trapezoid_weight(xg, i) *
                 joint(TomographicQuery(s * xg.node(i), {mu}, {nu}));
        m *= s;
        double pv = p(std::span<const double>(&mu, 1),
                      std::span<const double>(&nu, 1));
        CHECK(m == doctest::Approx(pv).epsilon(1e-4));
    }

    // total normalization over (X, mu, nu)
    Grid1D pg(-4.0, 4.0, 81);
    double total = 0.0;
    for (int i = 0; i < pg.points; ++i)
        for (int j = 0; j < pg.points; ++j) {
            double mu = pg.node(i), nu = pg.node(j);
            if (mu == 0.0 && nu == 0.0) {
                // the X-marginal equals the prior there
                total += trapezoid_weight(pg, i) * trapezoid_weight(pg, j) /
                         kPi;
                continue;
            }
            double s = std::hypot(mu, nu);
            Grid1D xg(-25.0, 25.0, 301);
            double m = 0.0;
            for (int k = 0; k < xg.points; ++k)
                m += trapezoid_weight(xg, k) *
                     joint(TomographicQuery(s * xg.node(k), {mu}, {nu}));
            total += trapezoid_weight(pg, i) * trapezoid_weight(pg, j) * m * s;
        }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));

    // a vanishing prior forces a vanishing joint value
    ParameterPrior ring = ParameterPrior::custom(
        1,
        [](std::span<const double> mu, std::span<const double> nu) {
            double s = mu[0] * mu[0] + nu[0] * nu[0];
            return 2.0 * mu[0] * mu[0] * std::exp(-s) / kPi;
        },
        12.0);
    CHECK(joint_distribution(w, ring, TomographicQuery(0.0, {0.0}, {0.2})) ==
          0.0);
}

TEST_CASE("conditional recovers the tomogram, independent of the prior") {
    CmTomogram w = vacuum_tomogram();
    JointDistribution j1 = make_joint(w, ParameterPrior::gaussian(1));
    JointDistribution j2 = make_joint(w, wide_prior());

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double err1 = 0.0, err2 = 0.0, norm_err = 0.0;
    for (int t = 0; t < 100; ++t) {
        double X = 2.0 * u(rng), mu = u(rng), nu = u(rng);
        if (mu * mu + nu * nu < 0.1) nu += 0.6;
        TomographicQuery q(X, {mu}, {nu});
        double c1 = conditional_from_joint(j1, q);
        double c2 = conditional_from_joint(j2, q);
        err1 = std::max(err1, std::abs(c1 - w(q)));
        err2 = std::max(err2, std::abs(c1 - c2));
    }
    CHECK(err1 < 1e-6);
    CHECK(err2 < 1e-6);

    // conditionals satisfy no-signalling
    CmTomogram cond = make_conditional(j2);
    norm_err = std::abs(
        tomogram_normalization(cond, TomographicQuery(0.0, {0.9}, {-0.7}),
                               20.0, 801) -
        1.0);
    CHECK(norm_err < 1e-4);
}

TEST_CASE("density reconstruction from the joint distribution") {
    Grid1D axis(-8.0, 8.0, 96);
    CoherentState coh({1.0});
    CmTomogram w = [coh](const TomographicQuery& q) {
        return cm_tomogram_analytic(coh, q);
    };
    JointDistribution j1 = make_joint(w, ParameterPrior::gaussian(1));
    JointDistribution j2 = make_joint(w, wide_prior());

    GridDensityMatrix direct = density_from_cm_tomogram(w, axis);
    GridDensityMatrix via1 = density_from_joint(j1, axis);
    GridDensityMatrix via2 = density_from_joint(j2, axis);

    // identical code path after the conditional division
    double h = axis.spacing();
    CHECK(h * (via1.samples - direct.samples).norm() < 1e-10);
    CHECK(h * (via1.samples - via2.samples).norm() < 1e-6);

    GridWavefunction psi = discretize(coh, {axis});
    Eigen::VectorXcd v = psi.samples.col(0);
    CHECK(fidelity(via1, std::span<const cdouble>(v.data(),
                                                  (std::size_t)v.size())) >=
          0.999);

    // vacuum target in closed form
    GridDensityMatrix vac =
        density_from_joint(make_joint(vacuum_tomogram(),
                                      ParameterPrior::gaussian(1)),
                           axis);
    Eigen::MatrixXcd expect(axis.points, axis.points);
    for (int i = 0; i < axis.points; ++i)
        for (int j = 0; j < axis.points; ++j)
            expect(i, j) = std::exp(-0.5 * (axis.node(i) * axis.node(i) +
                                            axis.node(j) * axis.node(j))) /
                           std::sqrt(kPi);
    CHECK(h * (vac.samples - expect).norm() < 1e-3);
}

TEST_CASE("degenerate marginals raise a division-domain error") {
    // a joint that vanishes identically at some (mu, nu)
    JointDistribution j = [](const TomographicQuery& q) {
        return q.mu[0] > 0.0 ? 0.0
                             : cm_tomogram_analytic(CoherentState({0.0}), q);
    };
    CHECK_THROWS_AS(conditional_from_joint(j, TomographicQuery(0.0, {1.0},
                                                               {0.0})),
                    ArgumentError);
}

TEST_SUITE_END();
