#include <doctest.h>

#include <cmath>
#include <random>

#include "tomokit/errors.hpp"
#include "tomokit/states.hpp"
#include "tomokit/weyl.hpp"

using namespace tomokit;

namespace {

// Gaussian symbol samples exp(-((q-a)^2 + (p-b)^2)/s) on a shared grid.
WeylSymbolGrid gaussian_symbol(const Grid1D& gq, const Grid1D& gp, double a,
                               double b, double s, double amp = 1.0) {
    WeylSymbolGrid w;
    w.q = gq;
    w.p = gp;
    w.samples.resize(gq.points, gp.points);
    for (int i = 0; i < gq.points; ++i)
        for (int j = 0; j < gp.points; ++j) {
            double dq = gq.node(i) - a, dp = gp.node(j) - b;
            w.samples(i, j) = amp * std::exp(-(dq * dq + dp * dp) / s);
        }
    return w;
}

// Random sum of coherent-state dyads: Hermitian, smooth, Gaussian-damped.
GridOperator random_damped_operator(const Grid1D& axis, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-0.8, 0.8);
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(axis.points, axis.points);
    for (int term = 0; term < 3; ++term) {
        cdouble alpha(amp(rng), amp(rng));
        double c = amp(rng);
        Eigen::VectorXcd psi(axis.points);
        CoherentState s({alpha});
        for (int i = 0; i < axis.points; ++i) {
            double x[1] = {axis.node(i)};
            psi(i) = coherent_wavefunction(s, std::span<const double>(x, 1));
        }
        k += c * psi * psi.adjoint();
    }
    return GridOperator{axis, k};
}

} // namespace

TEST_SUITE_BEGIN("weyl");

TEST_CASE("vacuum Wigner function") {
    Grid1D ax(-7.0, 7.0, 141); // node at the origin
    GridWavefunction vac = discretize(CoherentState({0.0}), {ax});
    PhaseSpaceGrid ps = PhaseSpaceGrid::for_wavefunction(vac, 141);
    WignerGrid w = wigner_from_wavefunction(vac, ps);

    CHECK(w.value(0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(w.normalization() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(w.imag_residual < 1e-8);

    double err = 0.0;
    for (int i = 0; i < ax.points; i += 5)
        for (int j = 0; j < ps.p[0].points; j += 5) {
            double q = ax.node(i), p = ps.p[0].node(j);
            err = std::max(err, std::abs(w.samples[(std::size_t)i * 141 + j] -
                                         2.0 * std::exp(-q * q - p * p)));
        }
    CHECK(err < 1e-6);
}

TEST_CASE("coherent Wigner peaks at the displaced center") {
    Grid1D ax(-7.5, 7.5, 151);
    GridWavefunction c = discretize(CoherentState({1.0}), {ax});
    PhaseSpaceGrid ps = PhaseSpaceGrid::for_wavefunction(c, 151);
    WignerGrid w = wigner_from_wavefunction(c, ps);
    double best = -1.0, bq = 0.0, bp = 0.0;
    for (int i = 0; i < 151; ++i)
        for (int j = 0; j < 151; ++j)
            if (w.samples[(std::size_t)i * 151 + j] > best) {
                best = w.samples[(std::size_t)i * 151 + j];
                bq = ax.node(i);
                bp = ps.p[0].node(j);
            }
    CHECK(std::abs(bq - std::sqrt(2.0)) <= ax.spacing());
    CHECK(std::abs(bp) <= ps.p[0].spacing());
}

TEST_CASE("two-mode Wigner normalization through the Schmidt path") {
    // finely sampled state, coarse aligned output grid (stride 4)
    Grid1D fine(-7.0, 7.0, 161);
    Grid1D coarse(-7.0, 7.0, 41);
    GridWavefunction cat =
        discretize(CatState({1.0, cdouble(0.0, 0.5)}, +1), {fine, fine});
    PhaseSpaceGrid ps;
    ps.q = {coarse, coarse};
    ps.p = {coarse, coarse};
    WignerGrid w = wigner_from_wavefunction(cat, ps);
    CHECK(w.normalization() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(w.imag_residual < 1e-8);
}

TEST_CASE("weyl symbol of projectors and hermitian operators") {
    Grid1D ax(-7.0, 7.0, 141);
    GridWavefunction vac = discretize(CoherentState({0.0}), {ax});
    GridOperator proj = GridOperator::projector(ax, vac.samples.col(0));
    Grid1D pg(-7.0, 7.0, 141);
    WeylSymbolGrid w = weyl_symbol(proj, ax, pg);

    // symbol of |0><0| equals the vacuum Wigner values
    double err = 0.0, imax = 0.0;
    for (int i = 0; i < ax.points; i += 4)
        for (int j = 0; j < pg.points; j += 4) {
            double q = ax.node(i), p = pg.node(j);
            err = std::max(err, std::abs(w.samples(i, j).real() -
                                         2.0 * std::exp(-q * q - p * p)));
            imax = std::max(imax, std::abs(w.samples(i, j).imag()));
        }
    CHECK(err < 1e-6);
    CHECK(imax < 1e-8);

    std::mt19937 rng(7);
    GridOperator h = random_damped_operator(ax, rng);
    WeylSymbolGrid wh = weyl_symbol(h, ax, pg);
    CHECK(wh.samples.imag().cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("operator reconstruction from Weyl symbols") {
    Grid1D ax(-7.0, 7.0, 128);
    const double h = ax.spacing();

    SUBCASE("constant symbol gives the discrete identity") {
        // with p extent pi/h the off-diagonal sinc zeros land on nodes
        Grid1D pg(-kPi / h, kPi / h, 257);
        WeylSymbolGrid one = WeylSymbolGrid::constant(ax, pg, 1.0);
        GridOperator id = operator_from_weyl(one, ax);
        CHECK(std::abs(id.kernel(64, 64).real() - 1.0 / h) < 1e-4 / h);
        double off = 0.0;
        for (int d = 1; d < 40; ++d)
            off = std::max(off, std::abs(id.kernel(64, 64 + d)));
        CHECK(off < 1e-4 / h);
    }

    SUBCASE("projector round trips") {
        // half-spacing symbol grid so midpoints are exact nodes
        Grid1D qg(ax.min, ax.max, 2 * ax.points - 1);
        Grid1D pg(-8.0, 8.0, 161);
        for (cdouble alpha : {cdouble(0.0, 0.0), cdouble(1.0, 0.0)}) {
            GridWavefunction s = discretize(CoherentState({alpha}), {ax});
            GridOperator proj =
                GridOperator::projector(ax, s.samples.col(0));
            WeylSymbolGrid w = weyl_symbol(proj, qg, pg);
            GridOperator back = operator_from_weyl(w, ax);
            double scale = proj.kernel.cwiseAbs().maxCoeff();
            CHECK((back.kernel - proj.kernel).cwiseAbs().maxCoeff() / scale <
                  1e-4);
            CHECK(weyl_roundtrip_residual(proj, qg, pg) < 1e-4);
        }
    }
}

TEST_CASE("groenewold star: identity and projector idempotence") {
    Grid1D g(-8.5, 8.5, 97);
    WeylSymbolGrid one = WeylSymbolGrid::constant(g, g, 1.0);
    WeylSymbolGrid wb = gaussian_symbol(g, g, 1.0, -0.5, 1.0);

    WeylSymbolGrid left = groenewold_star(one, wb);
    CHECK((left.samples - wb.samples).cwiseAbs().maxCoeff() == 0.0);
    WeylSymbolGrid right = groenewold_star(wb, one);
    CHECK((right.samples - wb.samples).cwiseAbs().maxCoeff() == 0.0);

    // vacuum projector symbol: 2 e^{-q^2 - p^2}, idempotent under star
    WeylSymbolGrid vac = gaussian_symbol(g, g, 0.0, 0.0, 1.0, 2.0);
    WeylSymbolGrid sq = groenewold_star(vac, vac);
    CHECK((sq.samples - vac.samples).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("groenewold star matches the operator-product oracle") {
    Grid1D ax(-8.0, 8.0, 65);
    Grid1D pg(-8.0, 8.0, 65);
    std::mt19937 rng(1234);
    GridOperator a = random_damped_operator(ax, rng);
    GridOperator b = random_damped_operator(ax, rng);

    WeylSymbolGrid wa = weyl_symbol(a, ax, pg);
    WeylSymbolGrid wb = weyl_symbol(b, ax, pg);
    WeylSymbolGrid star = groenewold_star(wa, wb, 1e-4);
    WeylSymbolGrid oracle = weyl_symbol(multiply(a, b), ax, pg);

    double scale = oracle.samples.cwiseAbs().maxCoeff();
    CHECK((star.samples - oracle.samples).cwiseAbs().maxCoeff() / scale <
          1e-3);
}

TEST_CASE("canonical commutator of damped quadrature symbols") {
    // w_q = q D, w_p = p D with D = exp(-delta (q^2+p^2)); the exact star
    // commutator at the origin is i / (1 + delta^2)^2
    const double delta = 0.04;
    Grid1D g(-15.0, 15.0, 385);
    WeylSymbolGrid wq, wp;
    wq.q = wp.q = g;
    wq.p = wp.p = g;
    wq.samples.resize(g.points, g.points);
    wp.samples.resize(g.points, g.points);
    for (int i = 0; i < g.points; ++i)
        for (int j = 0; j < g.points; ++j) {
            double q = g.node(i), p = g.node(j);
            double d = std::exp(-delta * (q * q + p * p));
            wq.samples(i, j) = q * d;
            wp.samples(i, j) = p * d;
        }
    // the mild damping leaves ~2e-3 at the window edge; the
    // truncation ringing it causes is far below the 1e-2 target
    cdouble qp = groenewold_star_at(wq, wp, 0.0, 0.0, 1e-2);
    cdouble pq = groenewold_star_at(wp, wq, 0.0, 0.0, 1e-2);
    cdouble comm = qp - pq;
    CHECK(std::abs(comm - cdouble(0.0, 1.0)) < 1e-2);
}

TEST_CASE("associativity of the star product") {
    Grid1D g(-8.5, 8.5, 97);
    WeylSymbolGrid a = gaussian_symbol(g, g, 0.8, 0.0, 1.2);
    WeylSymbolGrid b = gaussian_symbol(g, g, -0.5, 0.7, 0.9);
    WeylSymbolGrid c = gaussian_symbol(g, g, 0.0, -1.0, 1.5);

    WeylSymbolGrid ab_c = groenewold_star(groenewold_star(a, b), c);
    WeylSymbolGrid a_bc = groenewold_star(a, groenewold_star(b, c));
    double scale = ab_c.samples.cwiseAbs().maxCoeff();
    CHECK((ab_c.samples - a_bc.samples).cwiseAbs().maxCoeff() / scale < 1e-3);
}

TEST_CASE("star rejects non-decaying symbols") {
    Grid1D g(-4.0, 4.0, 33);
    WeylSymbolGrid broad = gaussian_symbol(g, g, 0.0, 0.0, 40.0);
    CHECK_THROWS_AS(groenewold_star(broad, broad), AccuracyError);
}

TEST_SUITE_END();
