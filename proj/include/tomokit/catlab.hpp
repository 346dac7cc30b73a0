#pragma once

#include <span>
#include <vector>

#include "tomokit/parallel.hpp"
#include "tomokit/states.hpp"
#include "tomokit/tomography.hpp"

// Closed-form two-mode Schroedinger-cat tomograms, the linear entropy of
// the reduced single-mode state, and figure-data generation.

namespace tomokit {

struct EntropySweepRow {
    double alpha1_sq;
    double alpha2_sq;
    int parity;
    double entropy;
};

// Center-of-mass tomogram of a two-mode cat state in closed form (the
// sign-corrected four-term expression; see cm_tomogram_analytic).
double cat_cm_tomogram(const CatState& s, const TomographicQuery& q);

// S_pm = 0.5 - 0.5 (1 pm e^{-2 a1 - 2 a2})^{-2} (e^{-2 a1} pm e^{-2 a2})^2
// with a_j = |alpha_j|^2; ranges over [0, 0.5].
double cat_linear_entropy(double alpha1_sq, double alpha2_sq, int parity);

// One curve per alpha2_sq value, alpha1_sq swept over [min, max] in `steps`
// equal increments (steps + 1 rows per curve).
std::vector<EntropySweepRow> entropy_sweep(int parity,
                                           std::span<const double> alpha2_sq,
                                           double alpha1_sq_min,
                                           double alpha1_sq_max, int steps,
                                           Exec exec = Exec::parallel);

} // namespace tomokit
