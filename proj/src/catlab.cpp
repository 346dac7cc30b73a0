#include "tomokit/catlab.hpp"

#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

double cat_cm_tomogram(const CatState& s, const TomographicQuery& q) {
    if (s.modes() != 2)
        throw ArgumentError("cat_cm_tomogram: two-mode cat states only");
    return cm_tomogram_analytic(s, q);
}

double cat_linear_entropy(double alpha1_sq, double alpha2_sq, int parity) {
    if (alpha1_sq < 0.0 || alpha2_sq < 0.0)
        throw ArgumentError("cat_linear_entropy: |alpha|^2 must be >= 0");
    if (parity != +1 && parity != -1)
        throw ArgumentError("cat_linear_entropy: parity must be +1 or -1");
    if (parity == -1 && alpha1_sq == 0.0 && alpha2_sq == 0.0)
        throw InvalidStateError(
            "cat_linear_entropy: degenerate odd cat (all alphas zero)");
    const double g1 = std::exp(-2.0 * alpha1_sq);
    const double g2 = std::exp(-2.0 * alpha2_sq);
    const double denom = 1.0 + parity * g1 * g2;
    const double num = g1 + parity * g2;
    return 0.5 - 0.5 * (num * num) / (denom * denom);
}

std::vector<EntropySweepRow> entropy_sweep(int parity,
                                           std::span<const double> alpha2_sq,
                                           double alpha1_sq_min,
                                           double alpha1_sq_max, int steps,
                                           Exec exec) {
    if (alpha2_sq.empty())
        throw ArgumentError("entropy_sweep: need at least one alpha2_sq");
    if (!(alpha1_sq_min <= alpha1_sq_max) || steps < 1)
        throw ArgumentError("entropy_sweep: bad alpha1_sq range");

    const int per_curve = steps + 1;
    std::vector<EntropySweepRow> rows((std::size_t)alpha2_sq.size() *
                                      per_curve);
    const double da = (alpha1_sq_max - alpha1_sq_min) / steps;
    parallel_for((std::int64_t)rows.size(), exec, [&](std::int64_t idx) {
        const int curve = (int)(idx / per_curve);
        const int step = (int)(idx % per_curve);
        double a1 = alpha1_sq_min + da * step;
        EntropySweepRow& r = rows[idx];
        r.alpha1_sq = a1;
        r.alpha2_sq = alpha2_sq[curve];
        r.parity = parity;
        r.entropy = cat_linear_entropy(a1, r.alpha2_sq, parity);
    });
    return rows;
}

} // namespace tomokit
