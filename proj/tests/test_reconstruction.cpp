#include <doctest.h>

#include <cmath>

#include "tomokit/catlab.hpp"
#include "tomokit/errors.hpp"
#include "tomokit/oputil.hpp"
#include "tomokit/reconstruction.hpp"
#include "tomokit/states.hpp"
#include "tomokit/tomography.hpp"

using namespace tomokit;

namespace {

// continuum Frobenius norm of the difference of two kernels
double frobenius_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                       double h) {
    return h * (a - b).norm();
}

CmTomogram analytic_tomogram(const CoherentState& s) {
    return [s](const TomographicQuery& q) {
        return cm_tomogram_analytic(s, q);
    };
}

CmTomogram analytic_tomogram(const CatState& s) {
    return [s](const TomographicQuery& q) {
        return cm_tomogram_analytic(s, q);
    };
}

// Tomogram of the reduced state of a two-mode cat: the mode-2 trace leaves
// the mode-1 coherent mixture with cross weight g2 = e^{-2|alpha2|^2}.
CmTomogram reduced_cat_tomogram(cdouble a1, cdouble a2, int parity) {
    double g1 = std::exp(-2.0 * std::norm(a1));
    double g2 = std::exp(-2.0 * std::norm(a2));
    double n2 = 1.0 / (2.0 + parity * 2.0 * g1 * g2);
    return [=](const TomographicQuery& q) {
        double sig = q.sigma();
        double m = std::sqrt(2.0) * (q.mu[0] * a1.real() + q.nu[0] * a1.imag());
        double t = std::sqrt(2.0) * (q.nu[0] * a1.real() - q.mu[0] * a1.imag());
        double um = q.X - m, up = q.X + m;
        double direct = std::exp(-um * um / sig) + std::exp(-up * up / sig);
        double cross = 2.0 * g1 * std::exp((t * t - q.X * q.X) / sig) *
                       std::cos(2.0 * q.X * t / sig);
        return n2 * (direct + parity * g2 * cross) / std::sqrt(kPi * sig);
    };
}

} // namespace

TEST_SUITE_BEGIN("reconstruction");

TEST_CASE("vacuum density matrix from its tomogram") {
    Grid1D axis(-8.0, 8.0, 128);
    GridDensityMatrix rho =
        density_from_cm_tomogram(analytic_tomogram(CoherentState({0.0})),
                                 axis);
    Eigen::MatrixXcd expect(axis.points, axis.points);
    for (int i = 0; i < axis.points; ++i)
        for (int j = 0; j < axis.points; ++j)
            expect(i, j) = std::exp(-0.5 * (axis.node(i) * axis.node(i) +
                                            axis.node(j) * axis.node(j))) /
                           std::sqrt(kPi);
    CHECK(frobenius_error(rho.samples, expect, axis.spacing()) < 1e-3);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rho.herm_residual() < 1e-6);
    CHECK(rho.min_eigenvalue() > -1e-6);
}

TEST_CASE("coherent state round trip with fidelity") {
    Grid1D axis(-8.0, 8.0, 128);
    for (cdouble alpha : {cdouble(0.5, 0.0), cdouble(1.0, 0.0)}) {
        CoherentState s({alpha});
        GridDensityMatrix rho =
            density_from_cm_tomogram(analytic_tomogram(s), axis);
        GridWavefunction psi = discretize(s, {axis});
        Eigen::VectorXcd v = psi.samples.col(0);
        CHECK(fidelity(rho, std::span<const cdouble>(v.data(),
                                                     (std::size_t)v.size())) >=
              0.999);
        GridOperator proj = GridOperator::projector(axis, v);
        CHECK(frobenius_error(rho.samples, proj.kernel, axis.spacing()) <
              1e-3);
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("reduced even-cat state round trips") {
    Grid1D axis(-8.0, 8.0, 96);
    CatState cat({1.0, 1.0}, +1);
    GridWavefunction psi2 =
        discretize(cat, {Grid1D(-8.0, 8.0, 128), Grid1D(-8.0, 8.0, 128)});
    GridDensityMatrix rho_oracle = reduce_to_mode(psi2, 0);

    GridDensityMatrix rho =
        density_from_cm_tomogram(reduced_cat_tomogram(1.0, 1.0, +1), axis);
    // compare on the reconstruction axis (subsample the oracle)
    Eigen::MatrixXcd expect(axis.points, axis.points);
    Grid1D oracle_axis = rho_oracle.axis;
    for (int i = 0; i < axis.points; ++i)
        for (int j = 0; j < axis.points; ++j) {
            // oracle axis has 128 points over the same range
            double x = axis.node(i), y = axis.node(j);
            int ix = (int)std::llround((x - oracle_axis.min) /
                                       oracle_axis.spacing());
            int iy = (int)std::llround((y - oracle_axis.min) /
                                       oracle_axis.spacing());
            if (std::abs(oracle_axis.node(ix) - x) < 1e-9 &&
                std::abs(oracle_axis.node(iy) - y) < 1e-9) {
                expect(i, j) = rho_oracle.samples(ix, iy);
            } else {
                // fall back to the known closed form of the mixture
                double g2 = std::exp(-2.0);
                double n2 = 1.0 / (2.0 + 2.0 * g2 * g2);
                auto coh = [&](double a, double xx) {
                    return std::exp(-0.5 * (xx - std::sqrt(2.0) * a) *
                                    (xx - std::sqrt(2.0) * a)) /
                           std::pow(kPi, 0.25);
                };
                expect(i, j) =
                    n2 * (coh(1, x) * coh(1, y) + coh(-1, x) * coh(-1, y) +
                          g2 * (coh(1, x) * coh(-1, y) +
                                coh(-1, x) * coh(1, y)));
            }
        }
    CHECK(frobenius_error(rho.samples, expect, axis.spacing()) < 1e-3);
}

TEST_CASE("reconstruction rejects non-normalizable input") {
    Grid1D axis(-6.0, 6.0, 48);
    CmTomogram bad = [](const TomographicQuery& q) {
        return std::exp(q.X * q.X / q.sigma());
    };
    CHECK_THROWS_AS(density_from_cm_tomogram(bad, axis), AccuracyError);
}

TEST_CASE("dual symbols of the vacuum projector") {
    Grid1D axis(-8.0, 8.0, 128);
    GridWavefunction vac = discretize(CoherentState({0.0}), {axis});
    GridOperator proj = GridOperator::projector(axis, vac.samples.col(0));

    // X = 0, mu = nu = 0: (2 pi)^{-1} Tr rho
    CHECK(std::abs(dual_cm_symbol(proj, 0.0, 0.0, 0.0) -
                   cdouble(1.0 / kTwoPi, 0.0)) < 1e-8);

    // mu = 2, nu = 0: magnitude (2 pi)^{-1} e^{-1}
    cdouble v = dual_symbol(proj, TomographicQuery(0.7, {2.0}, {0.0}));
    CHECK(std::abs(std::abs(v) - std::exp(-1.0) / kTwoPi) < 1e-6);
    // and the phase factor is e^{iX}
    CHECK(std::arg(v) == doctest::Approx(0.7).epsilon(1e-6));

    // Hermitian conjugation: Phi(-mu, -nu) = conj Phi(mu, nu)
    DualSymbol d = dual_symbol_of(proj);
    for (auto [mu, nu] : {std::pair{0.9, -0.4}, {1.5, 0.3}}) {
        cdouble a = d.char_fn(mu, nu);
        cdouble b = d.char_fn(-mu, -nu);
        CHECK(std::abs(a - std::conj(b)) < 1e-8);
    }
}

TEST_CASE("mean values through the dual pairing") {
    Grid1D axis(-8.0, 8.0, 128);
    GridWavefunction vac = discretize(CoherentState({0.0}), {axis});
    GridOperator proj = GridOperator::projector(axis, vac.samples.col(0));
    DualSymbol dvac = dual_symbol_of(proj, "vacuum projector");

    double resid = 0.0;
    // <|0><0|> on the vacuum: purity 1
    double p = mean_value(analytic_tomogram(CoherentState({0.0})), dvac, {},
                          &resid);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(resid < 1e-6);

    // overlap with a displaced coherent state: |<0|alpha>|^2 = e^{-1}
    double o = mean_value(analytic_tomogram(CoherentState({1.0})), dvac, {},
                          &resid);
    CHECK(o == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
    CHECK(resid < 1e-6);

    // identity: normalization
    double one = mean_value(analytic_tomogram(CoherentState({1.0})),
                            dual_symbol_identity(), {}, &resid);
    CHECK(one == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(resid < 1e-4);
}

TEST_CASE("mean of the damped position observable matches the moment") {
    // observable with Weyl symbol q e^{-delta(q^2+p^2)}; its characteristic
    // function is analytic and concentrates near the origin
    const double delta = 1e-4;
    DualSymbol dq;
    dq.tag = "damped q";
    dq.char_fn = [delta](double a, double b) {
        return cdouble(0.0, -a / (2.0 * delta)) * (0.5 / delta) *
               std::exp(-(a * a + b * b) / (4.0 * delta));
    };

    CoherentState s({cdouble(0.7, -0.4)});
    MeanOptions opts;
    opts.mu_half = 0.12;
    opts.mu_points = 121;
    double resid = 0.0;
    double mean = mean_value(analytic_tomogram(s), dq, opts, &resid);
    double moment =
        moments_from_tomogram(analytic_tomogram(s), {1.0}, {0.0}, 1);
    CHECK(mean == doctest::Approx(moment).epsilon(1e-3));
    CHECK(moment ==
          doctest::Approx(std::sqrt(2.0) * 0.7).epsilon(1e-6));
}

TEST_CASE("moments from tomograms") {
    CmTomogram vac = analytic_tomogram(CoherentState({0.0}));
    CHECK(std::abs(moments_from_tomogram(vac, {1.0}, {0.0}, 1)) < 1e-10);
    CHECK(moments_from_tomogram(vac, {1.0}, {0.0}, 2) ==
          doctest::Approx(0.5).epsilon(1e-4));
    CmTomogram coh = analytic_tomogram(CoherentState({1.0}));
    CHECK(moments_from_tomogram(coh, {1.0}, {0.0}, 1) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("subsystem purity from the joint tomogram") {
    // pure product state: purity 1
    CmTomogram vac2 = analytic_tomogram(CoherentState({0.0, 0.0}));
    double p = purity_from_cm(vac2, 2);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-3));

    // even cat: purity = 1 - S_+
    CatState even({1.0, 1.0}, +1);
    double pe = purity_from_cm(analytic_tomogram(even), 2);
    CHECK(pe == doctest::Approx(1.0 - cat_linear_entropy(1.0, 1.0, +1))
                    .epsilon(1e-3));

    // odd cat with equal moduli: purity 1/2
    CatState odd({1.0, 1.0}, -1);
    double po = purity_from_cm(analytic_tomogram(odd), 2);
    CHECK(po == doctest::Approx(0.5).epsilon(1e-3));

    CHECK(p <= 1.0 + 1e-3);
    CHECK(po > 0.0);
}

TEST_SUITE_END();
