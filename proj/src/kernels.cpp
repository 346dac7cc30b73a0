#include "tomokit/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

double ConstrainedKernelValue::max_residual() const {
    double m = 0.0;
    for (const auto& c : constraints)
        if (c.coefficients.empty()) m = std::max(m, std::abs(c.offset));
    return m;
}

// ---------------------------------------------------------------------------
// Direct kernel evaluations

cdouble eval_groenewold_kernel(std::span<const double> q1,
                               std::span<const double> p1,
                               std::span<const double> q2,
                               std::span<const double> p2,
                               std::span<const double> q3,
                               std::span<const double> p3) {
    const std::size_t n = q1.size();
    if (p1.size() != n || q2.size() != n || p2.size() != n ||
        q3.size() != n || p3.size() != n)
        throw ArgumentError("eval_groenewold_kernel: inconsistent mode count");
    double phase = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        phase += q1[j] * p2[j] - q2[j] * p1[j] + q2[j] * p3[j] -
                 q3[j] * p2[j] + q3[j] * p1[j] - q1[j] * p3[j];
    return std::polar(std::pow(kPi, -2.0 * (double)n), 2.0 * phase);
}

ConstrainedKernelValue eval_cm_kernel_two_modes(const CmTriple& x1,
                                                const CmTriple& x2,
                                                const CmTriple& x3) {
    for (const CmTriple* t : {&x1, &x2, &x3})
        if (t->mu.size() != 2 || t->nu.size() != 2)
            throw ArgumentError("eval_cm_kernel_two_modes: N = 2 required");
    for (int j = 0; j < 2; ++j)
        if (x3.mu[j] == 0.0 || x3.nu[j] == 0.0)
            throw SingularKernelError(
                "eval_cm_kernel_two_modes: third-slot components must be "
                "nonzero");

    const double ratio = (x1.nu[1] + x2.nu[1]) / x3.nu[1];
    double phase = x1.X + x2.X - x3.X * ratio;
    for (int j = 0; j < 2; ++j)
        phase += 0.5 * (x1.nu[j] * x2.mu[j] - x1.mu[j] * x2.nu[j]);

    const double jac =
        1.0 / std::abs(x3.nu[0] * x3.nu[1] * x3.mu[0] * x3.mu[1]);

    ConstrainedKernelValue v;
    v.jacobian = jac;
    v.prefactor = std::polar(jac / std::pow(kTwoPi, 3.0), phase);
    v.constraints = {
        {{}, (x1.mu[0] + x2.mu[0]) / x3.mu[0] - ratio},
        {{}, (x1.mu[1] + x2.mu[1]) / x3.mu[1] - ratio},
        {{}, (x1.nu[0] + x2.nu[0]) / x3.nu[0] - ratio},
    };
    return v;
}

ConstrainedKernelValue eval_dual_cm_kernel(const CmTriple& x2,
                                           const CmTriple& x1,
                                           const CmTriple& x) {
    const std::size_t n = x.mu.size();
    for (const CmTriple* t : {&x1, &x2, &x})
        if (t->mu.size() != n || t->nu.size() != n || n < 1)
            throw ArgumentError("eval_dual_cm_kernel: mode count mismatch");
    // (k1, k2) solve the first mode's pair of deltas; for N > 1 the system
    // is overdetermined and the remaining deltas stay as residuals.
    const double det = x2.mu[0] * x1.nu[0] - x2.nu[0] * x1.mu[0];
    if (det == 0.0)
        throw SingularKernelError(
            "eval_dual_cm_kernel: mu2 nu1 = nu2 mu1, delta system singular");
    // k1 mu2 + k2 mu1 = -mu; k1 nu2 + k2 nu1 = -nu
    const double k1 = (-x.mu[0] * x1.nu[0] + x.nu[0] * x1.mu[0]) / det;
    const double k2 = (x2.mu[0] * -x.nu[0] + x2.nu[0] * x.mu[0]) / det;

    ConstrainedKernelValue v;
    v.jacobian = 1.0 / std::abs(det);
    double sym = 0.0; // mu2 . nu1 - nu2 . mu1 over all modes
    for (std::size_t j = 0; j < n; ++j)
        sym += x2.mu[j] * x1.nu[j] - x2.nu[j] * x1.mu[j];
    double phase = x.X - 0.5 * k1 * k2 * sym + k1 * x2.X + k2 * x1.X;
    v.prefactor = std::polar(v.jacobian / (4.0 * kPi * kPi), phase);
    for (std::size_t j = 1; j < n; ++j) {
        v.constraints.push_back(
            {{}, k1 * x2.mu[j] + k2 * x1.mu[j] + x.mu[j]});
        v.constraints.push_back(
            {{}, k1 * x2.nu[j] + k2 * x1.nu[j] + x.nu[j]});
    }
    return v;
}

ConstrainedKernelValue transition_kernel(TransitionDirection dir,
                                         const CmTriple& cm,
                                         const SymplecticTriple& s) {
    const std::size_t n = s.mu.size();
    if (cm.mu.size() != n || cm.nu.size() != n || s.nu.size() != n ||
        s.X.size() != n)
        throw ArgumentError("transition_kernel: mode count mismatch");

    ConstrainedKernelValue v;
    if (dir == TransitionDirection::cm_to_symplectic) {
        // Tr[D_cm U_s] = (2 pi)^{-N} e^{i X_cm} prod_j int dk_j
        //   e^{-i k_j Xs_j} delta(mu_cm_j - k_j mus_j)
        //                   delta(nu_cm_j - k_j nus_j)
        double phase = cm.X;
        double jac = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            double kj;
            if (s.mu[j] != 0.0) {
                kj = cm.mu[j] / s.mu[j];
                jac /= std::abs(s.mu[j]);
                v.constraints.push_back({{}, cm.nu[j] - kj * s.nu[j]});
            } else if (s.nu[j] != 0.0) {
                kj = cm.nu[j] / s.nu[j];
                jac /= std::abs(s.nu[j]);
                v.constraints.push_back({{}, cm.mu[j]});
            } else {
                throw SingularKernelError(
                    "transition_kernel: (mus_j, nus_j) = (0, 0)");
            }
            phase -= kj * s.X[j];
        }
        v.jacobian = jac;
        v.prefactor = std::polar(jac / std::pow(kTwoPi, (double)n), phase);
        return v;
    }

    // Tr[D_s U_cm] = (2 pi)^{-1} e^{i e.Xs} int dk e^{-i k X_cm}
    //   prod_j delta(mus_j - k mu_cm_j) delta(nus_j - k nu_cm_j)
    double k = 0.0;
    double jac = 0.0;
    bool fixed = false;
    for (std::size_t j = 0; j < n && !fixed; ++j) {
        if (cm.mu[j] != 0.0) {
            k = s.mu[j] / cm.mu[j];
            jac = 1.0 / std::abs(cm.mu[j]);
            fixed = true;
        } else if (cm.nu[j] != 0.0) {
            k = s.nu[j] / cm.nu[j];
            jac = 1.0 / std::abs(cm.nu[j]);
            fixed = true;
        }
    }
    if (!fixed)
        throw SingularKernelError(
            "transition_kernel: degenerate cm scaling vectors");
    for (std::size_t j = 0; j < n; ++j) {
        v.constraints.push_back({{}, s.mu[j] - k * cm.mu[j]});
        v.constraints.push_back({{}, s.nu[j] - k * cm.nu[j]});
    }
    double phase = -k * cm.X;
    for (double xj : s.X) phase += xj;
    v.jacobian = jac;
    v.prefactor = std::polar(jac / kTwoPi, phase);
    return v;
}

// ---------------------------------------------------------------------------
// Characteristic grids

cdouble CharGrid::at(double a, double b) const {
    if (identity)
        throw ArgumentError("CharGrid::at: identity grid is analytic");
    return interp_bicubic(lattice, lattice,
                          std::span<const cdouble>(values.data(),
                                                   (std::size_t)values.size()),
                          b, a);
    // note: values(ia, ib) is column-major, so the flat span is row-major
    // in (ib, ia); arguments are swapped accordingly.
}

CharGrid char_identity() {
    CharGrid g;
    g.identity = true;
    return g;
}

CharGrid char_from_operator(const GridOperator& op, const Grid1D& lattice,
                            Exec exec) {
    CharGrid g;
    g.lattice = lattice;
    g.values.resize(lattice.points, lattice.points);
    parallel_for(lattice.points, exec, [&](std::int64_t ia) {
        for (int ib = 0; ib < lattice.points; ++ib)
            g.values((int)ia, ib) =
                displacement_trace(op, lattice.node((int)ia),
                                   lattice.node(ib));
    });
    return g;
}

namespace {

// int f(Y, -a, -b) e^{iY} dY on sqrt(sigma)-scaled nodes, mirroring
// fourier_profile for complex-valued symbol callables.
cdouble complex_fourier_profile(const CmSymbolFn& f, double a, double b,
                                double z_half, int base_points) {
    const double s = std::hypot(a, b);
    int n = std::max(base_points,
                     (int)std::ceil(2.0 * z_half * s * 4.0 / kPi)) |
            1;
    n = std::min(n, 20001);
    Grid1D zg(-z_half, z_half, n);
    cdouble acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double y = s * zg.node(i);
        acc += trapezoid_weight(zg, i) * f(y, -a, -b) *
               std::exp(cdouble(0.0, y));
    }
    return acc * s;
}

} // namespace

CharGrid char_from_cm_symbol(const CmSymbolFn& f, const Grid1D& lattice,
                             double x_half, int x_points, Exec exec) {
    // x_half is measured in profile widths (the quadrature nodes scale with
    // sqrt(sigma) of the lattice point)
    CharGrid g;
    g.lattice = lattice;
    g.values.resize(lattice.points, lattice.points);
    const double z_half = x_half;
    const int base = std::max(201, x_points / 3) | 1;
    parallel_for(lattice.points, exec, [&](std::int64_t ia) {
        double a = lattice.node((int)ia);
        for (int ib = 0; ib < lattice.points; ++ib) {
            double b = lattice.node(ib);
            cdouble acc = 0.0;
            if (a == 0.0 && b == 0.0) {
                // Phi(0,0) = Tr A = int f(Y, a0, b0) dY for any direction
                Grid1D xg(-z_half, z_half, base);
                for (int i = 0; i < xg.points; ++i)
                    acc += trapezoid_weight(xg, i) * f(xg.node(i), 1.0, 0.0);
            } else {
                acc = complex_fourier_profile(f, a, b, z_half, base);
            }
            g.values((int)ia, ib) = acc;
        }
    });
    return g;
}

CharGrid twisted_convolution(const CharGrid& a, const CharGrid& b,
                             Exec exec) {
    if (a.identity) return b;
    if (b.identity) return a;
    if (!(a.lattice == b.lattice))
        throw ArgumentError("twisted_convolution: lattice mismatch");
    const Grid1D& L = a.lattice;
    const int n = L.points;
    const int c = (n - 1) / 2;
    if (2 * c != n - 1 || std::abs(L.min + L.max) > 1e-12)
        throw ArgumentError(
            "twisted_convolution: lattice must be symmetric with an odd "
            "point count");

    const double cut = 1e-14 * a.values.cwiseAbs().maxCoeff();
    CharGrid out;
    out.lattice = L;
    out.values.resize(n, n);
    parallel_for(n, exec, [&](std::int64_t imu) {
        double mu = L.node((int)imu);
        for (int inu = 0; inu < n; ++inu) {
            double nu = L.node(inu);
            cdouble acc = 0.0;
            for (int ia = 0; ia < n; ++ia) {
                int ja = (int)imu - ia + c;
                if (ja < 0 || ja >= n) continue;
                double av = L.node(ia);
                double wa = trapezoid_weight(L, ia);
                for (int ib = 0; ib < n; ++ib) {
                    int jb = inu - ib + c;
                    if (jb < 0 || jb >= n) continue;
                    cdouble f = a.values(ia, ib);
                    if (std::abs(f.real()) + std::abs(f.imag()) < cut)
                        continue;
                    double bv = L.node(ib);
                    acc += wa * trapezoid_weight(L, ib) * f *
                           b.values(ja, jb) *
                           std::exp(cdouble(0.0,
                                            -0.5 * (av * nu - bv * mu)));
                }
            }
            out.values((int)imu, inu) = acc / kTwoPi;
        }
    });
    return out;
}

cdouble cm_symbol_from_char(const CharGrid& phi, double X, double mu,
                            double nu, double k_half, int k_points) {
    if (phi.identity)
        throw ArgumentError(
            "cm_symbol_from_char: the identity symbol is distributional");
    double sigma = mu * mu + nu * nu;
    if (sigma <= 0.0)
        throw ArgumentError("cm_symbol_from_char: degenerate (mu, nu)");
    double reach = std::max(std::abs(mu), std::abs(nu));
    if (k_half <= 0.0) k_half = phi.lattice.max / reach;
    if (k_points <= 0) {
        double dk = kPi / (4.0 * std::max(std::abs(X), 1.5));
        k_points =
            std::clamp((int)std::ceil(2.0 * k_half / dk) | 1, 401, 4001);
    }
    Grid1D kg(-k_half, k_half, k_points);
    cdouble acc = 0.0;
    for (int i = 0; i < kg.points; ++i) {
        double k = kg.node(i);
        acc += trapezoid_weight(kg, i) * phi.at(k * mu, k * nu) *
               std::exp(cdouble(0.0, k * X));
    }
    return acc / kTwoPi;
}

cdouble star_product_cm_symbols(const CharGrid& a, const CharGrid& b, double X,
                                double mu, double nu) {
    if (a.identity && b.identity)
        throw ArgumentError("star_product_cm_symbols: both identity");
    if (a.identity) return cm_symbol_from_char(b, X, mu, nu);
    if (b.identity) return cm_symbol_from_char(a, X, mu, nu);
    CharGrid prod = twisted_convolution(a, b);
    return cm_symbol_from_char(prod, X, mu, nu);
}

cdouble dual_star_product(const CharGrid& a, const CharGrid& b, double X,
                          double mu, double nu) {
    cdouble phi_ab;
    if (a.identity && b.identity)
        throw ArgumentError("dual_star_product: both identity");
    if (a.identity)
        phi_ab = b.at(mu, nu);
    else if (b.identity)
        phi_ab = a.at(mu, nu);
    else {
        // single twisted-convolution value at (mu, nu)
        const Grid1D& L = a.lattice;
        const int n = L.points;
        cdouble acc = 0.0;
        for (int ia = 0; ia < n; ++ia) {
            double av = L.node(ia);
            for (int ib = 0; ib < n; ++ib) {
                double bv = L.node(ib);
                cdouble f = a.values(ia, ib);
                acc += trapezoid_weight(L, ia) * trapezoid_weight(L, ib) * f *
                       b.at(mu - av, nu - bv) *
                       std::exp(cdouble(0.0, -0.5 * (av * nu - bv * mu)));
            }
        }
        phi_ab = acc / kTwoPi;
    }
    return std::exp(cdouble(0.0, X)) * phi_ab / kTwoPi;
}

// ---------------------------------------------------------------------------
// Two-mode separable star product

namespace {

cdouble mode_overlap(const CharGrid& a, const CharGrid& b, double u, double v,
                     double k, bool phase) {
    const Grid1D& L = a.lattice;
    cdouble acc = 0.0;
    for (int ia = 0; ia < L.points; ++ia) {
        double av = L.node(ia);
        for (int ib = 0; ib < L.points; ++ib) {
            cdouble f = a.values(ia, ib);
            if (std::abs(f.real()) + std::abs(f.imag()) < 1e-16) continue;
            double bv = L.node(ib);
            cdouble g = b.at(k * u - av, k * v - bv);
            cdouble term = trapezoid_weight(L, ia) *
                           trapezoid_weight(L, ib) * f * g;
            if (phase)
                term *= std::exp(
                    cdouble(0.0, -0.5 * k * (av * v - bv * u)));
            acc += term;
        }
    }
    return acc;
}

} // namespace

cdouble cm_star_two_mode_separable(const CharGrid& a1, const CharGrid& a2,
                                   const CharGrid& b1, const CharGrid& b2,
                                   double X, std::array<double, 2> mu,
                                   std::array<double, 2> nu,
                                   const TwoModeStarOptions& opts) {
    Grid1D kg(-opts.k_half, opts.k_half, opts.k_points | 1);
    std::vector<cdouble> t(kg.points);
    for (int i = 0; i < kg.points; ++i) {
        double k = kg.node(i);
        t[i] = mode_overlap(a1, b1, mu[0], nu[0], k, opts.symplectic_phase) *
               mode_overlap(a2, b2, mu[1], nu[1], k, opts.symplectic_phase);
    }
    std::vector<cdouble> vals;
    for (double e : opts.epsilons) {
        cdouble acc = 0.0;
        for (int i = 0; i < kg.points; ++i) {
            double k = kg.node(i);
            acc += trapezoid_weight(kg, i) * t[i] *
                   std::exp(cdouble(-e * k * k, k * X));
        }
        vals.push_back(acc / std::pow(kTwoPi, 3.0));
    }
    if (vals.size() == 1) return vals[0];
    double r = opts.epsilons[vals.size() - 2] / opts.epsilons[vals.size() - 1];
    return (r * vals.back() - vals[vals.size() - 2]) / (r - 1.0);
}

// ---------------------------------------------------------------------------
// Groenewold -> center-of-mass kernel (regulated Gaussian reduction)

namespace {

// The quadratic form of the per-mode Groenewold phase,
//   2(q1 p2 - q2 p1 + q2 p3 - q3 p2 + q3 p1 - q1 p3) = z^T C z,
// over z = (q1, p1, q2, p2, q3, p3).
struct GroenewoldForm {
    Eigen::Matrix<double, 6, 6> vectors; // orthonormal eigenvectors
    Eigen::Matrix<double, 6, 1> eigenvalues;

    GroenewoldForm() {
        Eigen::Matrix<double, 6, 6> c = Eigen::Matrix<double, 6, 6>::Zero();
        auto set = [&](int i, int j, double v) {
            c(i, j) += v;
            c(j, i) += v;
        };
        set(0, 3, 1.0);  // q1 p2
        set(1, 2, -1.0); // q2 p1
        set(2, 5, 1.0);  // q2 p3
        set(3, 4, -1.0); // q3 p2
        set(4, 1, 1.0);  // q3 p1
        set(0, 5, -1.0); // q1 p3
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(c);
        vectors = es.eigenvectors();
        eigenvalues = es.eigenvalues();
    }
};

const GroenewoldForm& groenewold_form() {
    static const GroenewoldForm f;
    return f;
}

} // namespace

cdouble cm_kernel_from_groenewold_regulated(const CmTriple& x1,
                                            const CmTriple& x2,
                                            const CmTriple& x3, double eps) {
    const std::size_t nmodes = x1.mu.size();
    if (x2.mu.size() != nmodes || x3.mu.size() != nmodes || nmodes < 1 ||
        nmodes > 2)
        throw ArgumentError(
            "cm_kernel_from_groenewold_regulated: 1 or 2 modes");
    const GroenewoldForm& form = groenewold_form();

    cdouble det_accum = 1.0;
    cdouble s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t m = 0; m < nmodes; ++m) {
        Eigen::Matrix<double, 6, 1> u0, u1;
        u0 << x1.mu[m], x1.nu[m], x2.mu[m], x2.nu[m], 0.0, 0.0;
        u1 << 0.0, 0.0, 0.0, 0.0, x3.mu[m], x3.nu[m];
        Eigen::Matrix<double, 6, 1> w0 = form.vectors.transpose() * u0;
        Eigen::Matrix<double, 6, 1> w1 = form.vectors.transpose() * u1;
        for (int j = 0; j < 6; ++j) {
            cdouble lam(eps, -form.eigenvalues(j));
            det_accum *= std::sqrt(lam);
            cdouble inv = 1.0 / lam;
            s0 += -0.25 * w0(j) * w0(j) * inv;
            s1 += -0.5 * w0(j) * w1(j) * inv;
            s2 += -0.25 * w1(j) * w1(j) * inv;
        }
    }
    // int dtau exp(s2 tau^2 + (s1 + iX3) tau); the exponents are combined
    // before exponentiating because the zero modes of the Groenewold form
    // (translation invariance) make s0 and beta^2/(4 aa) separately huge
    // with an exact cancellation between them.
    cdouble aa = -s2;
    if (aa.real() <= 0.0)
        throw AccuracyError(
            "cm_kernel_from_groenewold_regulated: regulator too weak");
    cdouble beta = s1 + cdouble(0.0, x3.X);
    cdouble expo = s0 + beta * beta / (4.0 * aa);

    const double n = (double)nmodes;
    cdouble pref = std::exp(cdouble(0.0, x1.X + x2.X)) *
                   std::pow(kTwoPi, -3.0 * n) * std::pow(kPi, -2.0 * n) *
                   std::pow(kPi, 3.0 * n) / kTwoPi;
    return pref / det_accum * std::sqrt(kPi / aa) * std::exp(expo);
}

cdouble cm_kernel_from_groenewold_reduced(const CmTriple& x1,
                                          const CmTriple& x2,
                                          const CmTriple& x3,
                                          std::span<const double> epsilons,
                                          int nodes_per_axis, Exec exec) {
    if (x1.mu.size() != 2)
        throw ArgumentError("cm_kernel_from_groenewold_reduced: N = 2 only");
    std::vector<cdouble> vals;
    for (double eps : epsilons) {
        // integrate over the three delta-constraint residuals; the smeared
        // deltas have width ~ sqrt(eps), so the cube scales with it
        const double half = 10.0 * std::sqrt(2.0 * eps);
        Grid1D dg(-half, half, nodes_per_axis);
        std::vector<cdouble> slices(dg.points, 0.0);
        parallel_for(dg.points, exec, [&](std::int64_t i1) {
            CmTriple y1 = x1;
            cdouble acc = 0.0;
            for (int i2 = 0; i2 < dg.points; ++i2)
                for (int i3 = 0; i3 < dg.points; ++i3) {
                    y1.mu[0] = x1.mu[0] + dg.node((int)i1) * x3.mu[0];
                    y1.mu[1] = x1.mu[1] + dg.node(i2) * x3.mu[1];
                    y1.nu[0] = x1.nu[0] + dg.node(i3) * x3.nu[0];
                    acc += trapezoid_weight(dg, i2) * trapezoid_weight(dg, i3) *
                           cm_kernel_from_groenewold_regulated(y1, x2, x3,
                                                               eps);
                }
            slices[i1] = acc * trapezoid_weight(dg, (int)i1);
        });
        cdouble total = 0.0;
        for (const cdouble& s : slices) total += s;
        vals.push_back(total);
    }
    if (vals.size() == 1) return vals[0];
    double r = epsilons[vals.size() - 2] / epsilons[vals.size() - 1];
    return (r * vals.back() - vals[vals.size() - 2]) / (r - 1.0);
}

} // namespace tomokit
