#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "tomokit/catlab.hpp"
#include "tomokit/errors.hpp"
#include "tomokit/states.hpp"

using namespace tomokit;

namespace {

// Test-local wavefunction oracle, independent of the library evaluation
// path: psi_alpha(x) per mode with prefactor pi^{-1/4}.
cdouble oracle_coherent_1d(cdouble alpha, double x) {
    cdouble expo = -0.5 * x * x + std::sqrt(2.0) * alpha * x -
                   0.5 * std::norm(alpha) - 0.5 * alpha * alpha;
    return std::pow(kPi, -0.25) * std::exp(expo);
}

// L2 norm of the (unnormalized) cat combination on a quadrature grid.
double oracle_cat_norm_2mode(cdouble a1, cdouble a2, int parity,
                             double half = 10.0, int n = 257) {
    Grid1D g(-half, half, n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cdouble plus = oracle_coherent_1d(a1, g.node(i)) *
                           oracle_coherent_1d(a2, g.node(j));
            cdouble minus = oracle_coherent_1d(-a1, g.node(i)) *
                            oracle_coherent_1d(-a2, g.node(j));
            cdouble v = parity > 0 ? plus + minus : plus - minus;
            acc += trapezoid_weight(g, i) * trapezoid_weight(g, j) *
                   std::norm(v);
        }
    return std::sqrt(acc);
}

} // namespace

TEST_SUITE_BEGIN("states");

TEST_CASE("cat normalization against quadrature oracle") {
    // trivial point: e^0 = 1 gives N_+^{-2} = 4
    CHECK(cat_normalization(std::vector<cdouble>{0.0, 0.0}, +1) ==
          doctest::Approx(0.5).epsilon(1e-15));

    // odd cat, alphas = (1, 0): closed form (2 - 2 e^{-2})^{-1/2}
    double closed = 1.0 / std::sqrt(2.0 - 2.0 * std::exp(-2.0));
    CHECK(cat_normalization(std::vector<cdouble>{1.0, 0.0}, -1) ==
          doctest::Approx(closed).epsilon(1e-14));
    CHECK(closed == doctest::Approx(0.76043).epsilon(1e-4));
    CHECK(cat_normalization(std::vector<cdouble>{1.0, 0.0}, -1) ==
          doctest::Approx(1.0 / oracle_cat_norm_2mode(1.0, 0.0, -1))
              .epsilon(1e-10));

    // alphas = (0.5, 0.5i), even: value fixed by the quadrature oracle
    CHECK(cat_normalization(std::vector<cdouble>{0.5, cdouble(0.0, 0.5)}, +1) ==
          doctest::Approx(1.0 / oracle_cat_norm_2mode(0.5, cdouble(0.0, 0.5),
                                                      +1))
              .epsilon(1e-10));

    CHECK_THROWS_AS(cat_normalization(std::vector<cdouble>{0.0, 0.0}, -1),
                    InvalidStateError);
}

TEST_CASE("coherent wavefunction values and unit norm") {
    CoherentState vac({0.0, 0.0});
    double x0[2] = {0.0, 0.0};
    CHECK(coherent_wavefunction(vac, std::span<const double>(x0, 2)).real() ==
          doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
    CHECK(std::abs(coherent_wavefunction(vac, std::span<const double>(x0, 2))
                       .imag()) < 1e-18);

    CoherentState disp({1.0, 0.0});
    double x1[2] = {std::sqrt(2.0), 0.0};
    CHECK(std::abs(coherent_wavefunction(disp, std::span<const double>(x1, 2)) -
                   cdouble(1.0 / std::sqrt(kPi), 0.0)) < 1e-15);

    double bad[1] = {0.0};
    CHECK_THROWS_AS(coherent_wavefunction(disp, std::span<const double>(bad, 1)),
                    ArgumentError);

    // norm via quadrature for a complex displacement
    for (cdouble a : {cdouble(0.8, -0.4), cdouble(0.0, 1.3)}) {
        CoherentState s({a});
        Grid1D g = default_axis(std::abs(a), 257);
        double acc = 0.0;
        for (int i = 0; i < g.points; ++i) {
            double x[1] = {g.node(i)};
            acc += trapezoid_weight(g, i) *
                   std::norm(coherent_wavefunction(s, std::span<const double>(x, 1)));
        }
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("cat wavefunction parity and values") {
    CatState odd({cdouble(0.7, 0.2), cdouble(-0.3, 0.9)}, -1);
    double zero[2] = {0.0, 0.0};
    CHECK(cat_wavefunction(odd, std::span<const double>(zero, 2)) ==
          cdouble(0.0, 0.0));

    // parity is exact in floating point, both parities
    for (int parity : {+1, -1}) {
        CatState s({cdouble(0.9, -0.5), cdouble(0.2, 0.4)}, parity);
        for (double t : {0.3, -1.7, 2.9}) {
            double xp[2] = {t, -0.5 * t};
            double xm[2] = {-t, 0.5 * t};
            cdouble a = cat_wavefunction(s, std::span<const double>(xp, 2));
            cdouble b = cat_wavefunction(s, std::span<const double>(xm, 2));
            CHECK(a == (double)parity * b);
        }
    }

    // even cat with alpha = 0 is the two-mode vacuum
    CatState evac({0.0, 0.0}, +1);
    CoherentState vac({0.0, 0.0});
    for (double t : {0.0, 0.7, -1.1}) {
        double x[2] = {t, 1.0 - t};
        CHECK(std::abs(cat_wavefunction(evac, std::span<const double>(x, 2)) -
                       coherent_wavefunction(vac, std::span<const double>(x, 2))) <
              1e-15);
    }

    // norm of a displaced even cat via quadrature
    CatState s({1.0, 1.0}, +1);
    Grid1D g = default_axis(1.0, 257);
    double acc = 0.0;
    for (int i = 0; i < g.points; ++i)
        for (int j = 0; j < g.points; ++j) {
            double x[2] = {g.node(i), g.node(j)};
            acc += trapezoid_weight(g, i) * trapezoid_weight(g, j) *
                   std::norm(cat_wavefunction(s, std::span<const double>(x, 2)));
        }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("discretize checks coverage and normalization") {
    CoherentState vac({0.0, 0.0});
    Grid1D ax(-6.0, 6.0, 128);
    GridWavefunction psi = discretize(vac, {ax, ax});
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(CatState({0.0, 0.0}, -1), InvalidStateError);

    CatState big({2.0, 0.0}, +1);
    Grid1D wide(-9.0, 9.0, 160);
    GridWavefunction cat = discretize(big, {wide, wide});
    CHECK(cat.norm() == doctest::Approx(1.0).epsilon(1e-6));

    // too-narrow grid: the norm deficit must be flagged
    Grid1D narrow(-2.0, 2.0, 64);
    CHECK_THROWS_AS(discretize(big, {narrow, narrow}), GridCoverageError);
}

TEST_CASE("first moments of discretized states") {
    CoherentState s({cdouble(0.5, 0.3)});
    GridWavefunction psi = discretize(s, {default_axis(0.6, 257)});
    CHECK(psi.mean_position(0) ==
          doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-9));
    CHECK(psi.mean_momentum(0) ==
          doctest::Approx(std::sqrt(2.0) * 0.3).epsilon(1e-6));
}

TEST_CASE("reduce_to_mode partial trace") {
    Grid1D ax(-7.0, 7.0, 128);

    // product vacuum x vacuum: pure reduced state
    GridWavefunction vac2 = discretize(CoherentState({0.0, 0.0}), {ax, ax});
    GridDensityMatrix rho = reduce_to_mode(vac2, 0);
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rho.herm_residual() < 1e-10);
    CHECK(rho.min_eigenvalue() > -1e-8);
    // rho(x, x') = pi^{-1/2} e^{-(x^2 + x'^2)/2}
    int i = 64, j = 80;
    double expect = std::exp(-0.5 * (ax.node(i) * ax.node(i) +
                                     ax.node(j) * ax.node(j))) /
                    std::sqrt(kPi);
    CHECK(std::abs(rho.samples(i, j) - expect) < 1e-8);

    // odd cat with |alpha_1| = |alpha_2|: S_- = 0.5, purity 0.5
    GridWavefunction odd = discretize(CatState({1.0, 1.0}, -1), {ax, ax});
    CHECK(reduce_to_mode(odd, 0).purity() ==
          doctest::Approx(0.5).epsilon(1e-3));

    // even cat: purity matches the closed-form entropy
    GridWavefunction even =
        discretize(CatState({cdouble(0.7, 0.0), cdouble(1.0, 0.0)}, +1),
                   {ax, ax});
    double purity = reduce_to_mode(even, 0).purity();
    CHECK(purity == doctest::Approx(1.0 - cat_linear_entropy(0.49, 1.0, +1))
                        .epsilon(1e-3));

    GridWavefunction one = discretize(CoherentState({0.0}), {ax});
    CHECK_THROWS_AS(reduce_to_mode(one, 0), ArgumentError);
    CHECK(purity > 0.0);
    CHECK(purity <= 1.0 + 1e-9);
}

TEST_CASE("schmidt decomposition reassembles the state") {
    Grid1D ax(-7.5, 7.5, 96);
    GridWavefunction cat =
        discretize(CatState({1.0, cdouble(0.0, 0.8)}, +1), {ax, ax});
    auto terms = schmidt_decompose(cat);
    REQUIRE(terms.size() >= 2);
    double wsum = 0.0;
    for (const auto& t : terms) wsum += t.weight * t.weight;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-8));

    double err = 0.0;
    for (int i = 0; i < ax.points; i += 7)
        for (int j = 0; j < ax.points; j += 7) {
            cdouble acc = 0.0;
            for (const auto& t : terms)
                acc += t.weight * t.left(i) * t.right(j);
            err = std::max(err, std::abs(acc - cat.samples(i, j)));
        }
    CHECK(err < 1e-10);
}

TEST_SUITE_END();
