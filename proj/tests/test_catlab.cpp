#include <doctest.h>

#include <cmath>

#include "tomokit/catlab.hpp"
#include "tomokit/errors.hpp"
#include "tomokit/reconstruction.hpp"
#include "tomokit/tomography.hpp"

using namespace tomokit;

TEST_SUITE_BEGIN("catlab");

TEST_CASE("cat tomogram closed form") {
    // alpha = 0, even parity: two-mode vacuum
    CatState evac({0.0, 0.0}, +1);
    double v = cat_cm_tomogram(evac, TomographicQuery(0.0, {1.0, 0.0},
                                                      {0.0, 0.0}));
    CHECK(v == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-12));

    // no-signalling at closed-form accuracy, both parities
    for (int parity : {+1, -1}) {
        CatState cat({1.0, cdouble(0.0, 0.5)}, parity);
        CmTomogram w = [&](const TomographicQuery& q) {
            return cat_cm_tomogram(cat, q);
        };
        for (auto q : {TomographicQuery(0.0, {0.8, -0.3}, {0.2, 0.9}),
                       TomographicQuery(0.0, {1.0, 1.0}, {0.0, 0.0})}) {
            CHECK(tomogram_normalization(w, q, 40.0, 4001) ==
                  doctest::Approx(1.0).epsilon(1e-8));
        }
    }

    // odd cat against the Wigner-Radon oracle
    Grid1D ax(-8.0, 8.0, 129);
    CatState odd({1.0, 1.0}, -1);
    GridWavefunction psi = discretize(odd, {ax, ax});
    TwoModeRadonOracle oracle(psi);
    TomographicQuery q(0.0, {1.0, 1.0}, {0.0, 0.0});
    CHECK(cat_cm_tomogram(odd, q) ==
          doctest::Approx(oracle(q)).epsilon(1e-3));

    CHECK_THROWS_AS(cat_cm_tomogram(CatState({1.0}, +1),
                                    TomographicQuery(0.0, {1.0}, {0.0})),
                    ArgumentError);
}

TEST_CASE("linear entropy closed form") {
    // S_+(0, a2) = 0 exactly
    for (double a2 : {0.0, 0.5, 1.0, 2.0})
        CHECK(cat_linear_entropy(0.0, a2, +1) == 0.0);

    // S_-(a, a) = 0.5 exactly
    for (double a : {0.3, 1.0, 2.4})
        CHECK(cat_linear_entropy(a, a, -1) == 0.5);

    // large-|alpha1| asymptote at |alpha2|^2 = 0.5
    double asym = 0.5 - 0.5 * std::exp(-2.0);
    CHECK(cat_linear_entropy(25.0, 0.5, +1) ==
          doctest::Approx(asym).epsilon(1e-6));
    CHECK(asym == doctest::Approx(0.43233).epsilon(1e-4));

    // exact symmetry and range
    for (auto [a, b] : {std::pair{0.3, 1.7}, {2.0, 0.1}, {0.9, 0.9}}) {
        for (int p : {+1, -1}) {
            double s = cat_linear_entropy(a, b, p);
            CHECK(s == cat_linear_entropy(b, a, p));
            CHECK(s >= 0.0);
            CHECK(s <= 0.5);
        }
    }

    CHECK_THROWS_AS(cat_linear_entropy(0.0, 0.0, -1), InvalidStateError);
    CHECK_THROWS_AS(cat_linear_entropy(-0.1, 1.0, +1), ArgumentError);
}

TEST_CASE("entropy cross-route against the cm purity functional") {
    CatState even({cdouble(std::sqrt(0.8), 0.0), cdouble(0.0, 1.0)}, +1);
    CmTomogram w = [&](const TomographicQuery& q) {
        return cat_cm_tomogram(even, q);
    };
    double purity = purity_from_cm(w, 2);
    CHECK(1.0 - purity ==
          doctest::Approx(cat_linear_entropy(0.8, 1.0, +1)).epsilon(1e-3));
}

TEST_CASE("entropy sweep rows") {
    std::vector<double> a2 = {0.5, 1.0, 2.0};
    auto rows = entropy_sweep(+1, a2, 0.0, 5.0, 200);
    REQUIRE(rows.size() == 3 * 201);
    CHECK(rows[0].alpha1_sq == 0.0);
    CHECK(rows[0].alpha2_sq == 0.5);
    CHECK(rows[0].entropy == 0.0);

    // even curves increase monotonically toward the asymptote
    for (int c = 0; c < 3; ++c)
        for (int i = 1; i < 201; ++i)
            CHECK(rows[c * 201 + i].entropy >=
                  rows[c * 201 + i - 1].entropy - 1e-12);

    // odd curve with |alpha2|^2 = 1 peaks at 0.5 near alpha1_sq = 1
    auto odd = entropy_sweep(-1, std::vector<double>{1.0}, 0.0, 5.0, 200);
    double best = 0.0, at = -1.0;
    for (const auto& r : odd)
        if (r.entropy > best) {
            best = r.entropy;
            at = r.alpha1_sq;
        }
    CHECK(best == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(at - 1.0) <= 5.0 / 200 + 1e-12);

    // asymptote evaluation far out on the tail
    auto far = entropy_sweep(+1, std::vector<double>{2.0}, 20.0, 20.0 + 1e-9,
                             1);
    CHECK(far[0].entropy ==
          doctest::Approx(0.5 - 0.5 * std::exp(-8.0)).epsilon(1e-6));

    CHECK_THROWS_AS(entropy_sweep(+1, a2, 3.0, 1.0, 10), ArgumentError);
}

TEST_SUITE_END();
