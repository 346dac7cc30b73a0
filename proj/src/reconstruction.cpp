#include "tomokit/reconstruction.hpp"

#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

cdouble DualSymbol::operator()(const TomographicQuery& q) const {
    if (q.modes() != 1)
        throw ArgumentError("DualSymbol: single-mode queries only");
    if (identity)
        throw ArgumentError(
            "DualSymbol: the identity dual symbol is a delta; contract it "
            "through mean_value instead of evaluating pointwise");
    return std::exp(cdouble(0.0, q.X)) * char_fn(q.mu[0], q.nu[0]) / kTwoPi;
}

DualSymbol dual_symbol_of(GridOperator op, std::string tag) {
    DualSymbol d;
    d.tag = std::move(tag);
    d.char_fn = [op = std::move(op)](double a, double b) {
        return displacement_trace(op, a, b);
    };
    return d;
}

DualSymbol dual_symbol_identity() {
    DualSymbol d;
    d.identity = true;
    d.tag = "identity";
    return d;
}

cdouble dual_symbol(const GridOperator& op, const TomographicQuery& q) {
    if (q.modes() != 1)
        throw ArgumentError("dual_symbol: single-mode queries only");
    return dual_cm_symbol(op, q.X, q.mu[0], q.nu[0]);
}

GridDensityMatrix density_from_cm_tomogram(const CmTomogram& wcm,
                                           const Grid1D& axis,
                                           const ReconstructionOptions& opts) {
    const int n = axis.points;
    const double h = axis.spacing();
    Grid1D mg(-opts.mu_half, opts.mu_half, opts.mu_points);

    GridDensityMatrix rho;
    rho.axis = axis;
    rho.samples.resize(n, n);

    // one anti-diagonal per separation d = i - j; within it only the phase
    // e^{-i mu (x + x')/2} changes
    parallel_for(2 * n - 1, opts.exec, [&](std::int64_t dd) {
        const int d = (int)dd - (n - 1);
        const double nu = d * h;
        std::vector<cdouble> g(mg.points);
        std::vector<double> muv = {0.0}, nuv = {nu};
        for (int im = 0; im < mg.points; ++im) {
            muv[0] = mg.node(im);
            if (muv[0] == 0.0 && nu == 0.0) {
                // sigma = 0 is degenerate; the X profile collapses to a
                // delta, so the e^{iX} transform equals 1 exactly
                g[im] = 1.0;
                continue;
            }
            g[im] = fourier_profile(wcm, muv, nuv, opts.z_half,
                                    opts.z_points);
        }
        for (int i = std::max(0, d); i < n + std::min(0, d); ++i) {
            const int j = i - d;
            const double mid = 0.5 * (axis.node(i) + axis.node(j));
            cdouble acc = 0.0;
            for (int im = 0; im < mg.points; ++im)
                acc += trapezoid_weight(mg, im) * g[im] *
                       std::exp(cdouble(0.0, -mg.node(im) * mid));
            rho.samples(i, j) = acc / kTwoPi;
        }
    });

    if (!rho.samples.allFinite() ||
        rho.samples.cwiseAbs().maxCoeff() > 1e8)
        throw AccuracyError(
            "density_from_cm_tomogram: reconstruction diverged (input not "
            "normalizable?)");
    return rho;
}

double mean_value(const CmTomogram& wcm, const DualSymbol& wd,
                  const MeanOptions& opts, double* imag_residual) {
    if (wd.identity) {
        // <Id> = Tr rho = lim_{s->0} |Phi(s mu0, s nu0)|; the magnitude
        // drops the O(s) probe phase, leaving an O(s^2) Richardson step
        Grid1D zg(-opts.z_half, opts.z_half, opts.z_points);
        std::vector<double> mu0 = {1.0}, nu0 = {0.0};
        double a = std::abs(scaled_profile_transform(wcm, mu0, nu0, 1e-2, zg));
        double b = std::abs(scaled_profile_transform(wcm, mu0, nu0, 5e-3, zg));
        if (imag_residual) *imag_residual = 0.0;
        return (4.0 * b - a) / 3.0;
    }

    Grid1D mg(-opts.mu_half, opts.mu_half, opts.mu_points);
    std::vector<cdouble> rows(mg.points, 0.0);
    parallel_for(mg.points, opts.exec, [&](std::int64_t im) {
        std::vector<double> muv = {mg.node((int)im)}, nuv = {0.0};
        cdouble acc = 0.0;
        for (int in = 0; in < mg.points; ++in) {
            nuv[0] = mg.node(in);
            cdouble prof;
            if (muv[0] == 0.0 && nuv[0] == 0.0) {
                // the sigma -> 0 limit of the profile transform is Tr rho,
                // which is real; the probe's O(s) phase is an artifact
                Grid1D zg(-opts.z_half, opts.z_half, opts.z_points);
                std::vector<double> d1 = {1.0}, d0 = {0.0};
                prof = std::abs(
                    scaled_profile_transform(wcm, d1, d0, 5e-3, zg));
            } else {
                prof = fourier_profile(wcm, muv, nuv, opts.z_half,
                                       opts.z_points);
            }
            acc += trapezoid_weight(mg, in) * wd.char_fn(muv[0], nuv[0]) *
                   prof;
        }
        rows[im] = acc * trapezoid_weight(mg, (int)im);
    });
    cdouble total = 0.0;
    for (const cdouble& r : rows) total += r;
    total /= kTwoPi;
    if (imag_residual) *imag_residual = std::abs(total.imag());
    return total.real();
}

double moments_from_tomogram(const CmTomogram& wcm,
                             const std::vector<double>& mu,
                             const std::vector<double>& nu, int order,
                             double x_half, int x_points) {
    TomographicQuery probe(0.0, mu, nu);
    return tomogram_moment(wcm, probe, order, x_half, x_points);
}

double purity_from_cm(const CmTomogram& wcm, int modes,
                      const PurityOptions& opts) {
    if (modes != 1 && modes != 2)
        throw ArgumentError("purity_from_cm: modes must be 1 or 2");
    Grid1D mg(-opts.mu_half, opts.mu_half, opts.mu_points);

    // purity = (2 pi)^{-1} int |F(mu, nu)|^2 dmu dnu with
    // F = int w(Y, mu, 0, nu, 0) e^{iY} dY; F(-mu, -nu) = conj F lets us
    // integrate the half plane only.
    std::vector<double> rows(mg.points, 0.0);
    parallel_for(mg.points, opts.exec, [&](std::int64_t im) {
        double mu = mg.node((int)im);
        std::vector<double> muv(modes, 0.0), nuv(modes, 0.0);
        double acc = 0.0;
        for (int in = 0; in < mg.points; ++in) {
            double nu = mg.node(in);
            cdouble f;
            double factor = 2.0;
            if (mu == 0.0 && nu == 0.0) {
                // sigma -> 0 limit of the profile transform (equals Tr rho,
                // real; the probe's O(s) phase is an artifact)
                Grid1D zg(-opts.z_half, opts.z_half, opts.z_points);
                std::vector<double> a(modes, 0.0), b(modes, 0.0);
                a[0] = 1.0;
                f = std::abs(scaled_profile_transform(wcm, a, b, 5e-3, zg));
                factor = 1.0;
            } else if (mu < 0.0 || (mu == 0.0 && nu < 0.0)) {
                continue; // half plane, F(-mu,-nu) = conj F
            } else {
                muv[0] = mu;
                nuv[0] = nu;
                f = fourier_profile(wcm, muv, nuv, opts.z_half,
                                    opts.z_points);
            }
            acc += factor * trapezoid_weight(mg, in) * std::norm(f);
        }
        rows[im] = acc * trapezoid_weight(mg, (int)im);
    });
    double total = 0.0;
    for (double r : rows) total += r;
    return total / kTwoPi;
}

} // namespace tomokit
