#include "tomokit/tomography.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numeric>

#include "tomokit/errors.hpp"
#include "tomokit/oputil.hpp"

namespace tomokit {

namespace {

std::atomic<bool> coverage_warned{false};

void warn_coverage() {
    if (!coverage_warned.exchange(true))
        std::cerr << "tomokit: warning: integration line exits the Wigner "
                     "grid support; tomogram value may be truncated\n";
}

} // namespace

TomographicQuery::TomographicQuery(double x, std::vector<double> m,
                                   std::vector<double> n)
    : X(x), mu(std::move(m)), nu(std::move(n)) {
    if (mu.size() != nu.size() || mu.empty())
        throw ArgumentError("TomographicQuery: mu and nu must have equal, "
                            "nonzero length");
    if (sigma() <= 0.0)
        throw ArgumentError(
            "TomographicQuery: (mu, nu) = 0 is degenerate (sigma = 0)");
}

double TomographicQuery::sigma() const {
    double s = 0.0;
    for (double v : mu) s += v * v;
    for (double v : nu) s += v * v;
    return s;
}

SymplecticQuery::SymplecticQuery(std::vector<double> x, std::vector<double> m,
                                 std::vector<double> n)
    : X(std::move(x)), mu(std::move(m)), nu(std::move(n)) {
    if (mu.size() != nu.size() || mu.size() != X.size() || mu.empty())
        throw ArgumentError("SymplecticQuery: X, mu, nu must have equal, "
                            "nonzero length");
    for (std::size_t j = 0; j < mu.size(); ++j)
        if (mu[j] == 0.0 && nu[j] == 0.0)
            throw ArgumentError("SymplecticQuery: (mu_j, nu_j) = (0, 0) for "
                                "mode " + std::to_string(j));
}

ClusterPartition::ClusterPartition(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty())
        throw ArgumentError("ClusterPartition: needs at least one subsystem");
    for (int n : sizes)
        if (n < 1) throw ArgumentError("ClusterPartition: sizes must be >= 1");
}

int ClusterPartition::total_modes() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

int ClusterPartition::offset(int k) const {
    return std::accumulate(sizes.begin(), sizes.begin() + k, 0);
}

// ---------------------------------------------------------------------------
// Radon transforms

namespace {

// Line integral of a (q, p) table along mu q + nu p = s, including the
// 1/sqrt(sigma) Jacobian of the delta function.
template <typename T>
T line_integral(const Grid1D& gq, const Grid1D& gp, std::span<const T> table,
                double mu, double nu, double s) {
    const double sig = mu * mu + nu * nu;
    const double rs = std::sqrt(sig);
    const double q0 = s * mu / sig, p0 = s * nu / sig;
    const double tq = -nu / rs, tp = mu / rs;
    const double radius = std::hypot(std::max(std::abs(gq.min), gq.max),
                                     std::max(std::abs(gp.min), gp.max));
    if (std::hypot(q0, p0) > radius) return T{};
    const double dt = 0.5 * std::min(gq.spacing(), gp.spacing());
    const int half = (int)std::ceil(radius / dt);
    T acc{};
    for (int i = -half; i <= half; ++i) {
        double t = i * dt;
        acc += interp_bicubic(gq, gp, table, q0 + t * tq, p0 + t * tp);
    }
    return acc * (dt / rs);
}

// Orthonormal completion of a unit 4-vector, for the two-mode hyperplane.
std::array<std::array<double, 4>, 3> hyperplane_frame(
    const std::array<double, 4>& n) {
    std::array<std::array<double, 4>, 3> basis;
    int filled = 0;
    for (int axis = 0; axis < 4 && filled < 3; ++axis) {
        std::array<double, 4> v{};
        v[axis] = 1.0;
        double d = 0.0;
        for (int c = 0; c < 4; ++c) d += v[c] * n[c];
        for (int c = 0; c < 4; ++c) v[c] -= d * n[c];
        for (int b = 0; b < filled; ++b) {
            double e = 0.0;
            for (int c = 0; c < 4; ++c) e += v[c] * basis[b][c];
            for (int c = 0; c < 4; ++c) v[c] -= e * basis[b][c];
        }
        double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] +
                                v[3] * v[3]);
        if (norm < 1e-10) continue;
        for (int c = 0; c < 4; ++c) v[c] /= norm;
        basis[filled++] = v;
    }
    return basis;
}

double wigner4_interp(const WignerGrid& w, const std::array<double, 4>& z) {
    const Grid1D &g0 = w.grid.q[0], &g1 = w.grid.p[0], &g2 = w.grid.q[1],
                 &g3 = w.grid.p[1];
    const Grid1D* gs[4] = {&g0, &g1, &g2, &g3};
    int idx[4];
    double frac[4];
    for (int c = 0; c < 4; ++c) {
        const Grid1D& g = *gs[c];
        if (z[c] < g.min || z[c] > g.max) return 0.0;
        double u = (z[c] - g.min) / g.spacing();
        idx[c] = std::clamp((int)std::floor(u), 0, g.points - 2);
        frac[c] = u - idx[c];
    }
    const std::size_t s3 = 1;
    const std::size_t s2 = (std::size_t)g3.points;
    const std::size_t s1 = s2 * g2.points;
    const std::size_t s0 = s1 * g1.points;
    double acc = 0.0;
    for (int b = 0; b < 16; ++b) {
        double wgt = 1.0;
        std::size_t off = 0;
        const std::size_t strides[4] = {s0, s1, s2, s3};
        for (int c = 0; c < 4; ++c) {
            int bit = (b >> c) & 1;
            wgt *= bit ? frac[c] : 1.0 - frac[c];
            off += strides[c] * (idx[c] + bit);
        }
        acc += wgt * w.samples[off];
    }
    return acc;
}

} // namespace

double cm_tomogram_from_wigner(const WignerGrid& w,
                               const TomographicQuery& q) {
    const int n = w.grid.modes();
    if (q.modes() != n)
        throw ArgumentError("cm_tomogram_from_wigner: query mode mismatch");
    const double sig = q.sigma();
    if (n == 1) {
        double val = line_integral(w.grid.q[0], w.grid.p[0],
                                   std::span<const double>(w.samples),
                                   q.mu[0], q.nu[0], q.X);
        if (val == 0.0 &&
            std::abs(q.X) / std::sqrt(sig) >
                std::hypot(w.grid.q[0].max, w.grid.p[0].max))
            warn_coverage();
        return val / kTwoPi;
    }
    if (n != 2)
        throw ArgumentError("cm_tomogram_from_wigner: N in {1, 2} only");

    const double rs = std::sqrt(sig);
    std::array<double, 4> nhat = {q.mu[0] / rs, q.nu[0] / rs, q.mu[1] / rs,
                                  q.nu[1] / rs};
    std::array<double, 4> base;
    for (int c = 0; c < 4; ++c) base[c] = nhat[c] * q.X / rs;
    auto frame = hyperplane_frame(nhat);
    double radius = 0.0;
    for (int m = 0; m < 2; ++m)
        radius = std::max({radius, std::abs(w.grid.q[m].min), w.grid.q[m].max,
                           std::abs(w.grid.p[m].min), w.grid.p[m].max});
    const double T = radius * 2.0;
    const double dt =
        0.75 * std::min({w.grid.q[0].spacing(), w.grid.p[0].spacing(),
                         w.grid.q[1].spacing(), w.grid.p[1].spacing()});
    const int half = (int)std::ceil(T / dt);
    double acc = 0.0;
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j)
            for (int k = -half; k <= half; ++k) {
                std::array<double, 4> z;
                for (int c = 0; c < 4; ++c)
                    z[c] = base[c] + i * dt * frame[0][c] +
                           j * dt * frame[1][c] + k * dt * frame[2][c];
                acc += wigner4_interp(w, z);
            }
    return acc * dt * dt * dt / (rs * kTwoPi * kTwoPi);
}

// ---------------------------------------------------------------------------
// Two-mode Radon oracle

TwoModeRadonOracle::TwoModeRadonOracle(const GridWavefunction& psi,
                                       int p_points, Exec exec) {
    if (psi.modes != 2)
        throw ArgumentError("TwoModeRadonOracle: two-mode state required");
    PhaseSpaceGrid ps = PhaseSpaceGrid::for_wavefunction(psi, p_points);
    q1_ = ps.q[0];
    p1_ = ps.p[0];
    q2_ = ps.q[1];
    p2_ = ps.p[1];

    auto terms = schmidt_decompose(psi);
    auto flatten = [](const Eigen::MatrixXcd& m) {
        std::vector<cdouble> v((std::size_t)m.rows() * m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                v[(std::size_t)i * m.cols() + j] = m(i, j);
        return v;
    };
    const int rank = (int)terms.size();
    for (int r = 0; r < rank; ++r)
        for (int s = 0; s <= r; ++s) {
            Pair pr;
            pr.diagonal = (r == s);
            pr.coeff = terms[r].weight * terms[s].weight *
                       (pr.diagonal ? 1.0 : 2.0);
            pr.w1 = flatten(cross_wigner(psi.axes[0], terms[r].left,
                                         terms[s].left, p1_, exec));
            pr.w2 = flatten(cross_wigner(psi.axes[1], terms[r].right,
                                         terms[s].right, p2_, exec));
            pairs_.push_back(std::move(pr));
        }
}

void TwoModeRadonOracle::mode_profile(int mode,
                                      const std::vector<cdouble>& table,
                                      double mu, double nu,
                                      const Grid1D& sgrid,
                                      std::vector<cdouble>& out) const {
    const Grid1D& gq = mode == 0 ? q1_ : q2_;
    const Grid1D& gp = mode == 0 ? p1_ : p2_;
    out.resize(sgrid.points);
    for (int i = 0; i < sgrid.points; ++i)
        out[i] = line_integral(gq, gp, std::span<const cdouble>(table), mu, nu,
                               sgrid.node(i));
}

cdouble TwoModeRadonOracle::mode_mass(int mode,
                                      const std::vector<cdouble>& table) const {
    const Grid1D& gq = mode == 0 ? q1_ : q2_;
    const Grid1D& gp = mode == 0 ? p1_ : p2_;
    cdouble acc = 0.0;
    for (int i = 0; i < gq.points; ++i)
        for (int j = 0; j < gp.points; ++j)
            acc += trapezoid_weight(gq, i) * trapezoid_weight(gp, j) *
                   table[(std::size_t)i * gp.points + j];
    return acc;
}

double TwoModeRadonOracle::operator()(const TomographicQuery& q) const {
    if (q.modes() != 2)
        throw ArgumentError("TwoModeRadonOracle: two-mode query required");
    const double s1 = q.mu[0] * q.mu[0] + q.nu[0] * q.nu[0];
    const double s2 = q.mu[1] * q.mu[1] + q.nu[1] * q.nu[1];

    // A mode with (mu, nu) = (0, 0) contributes a delta in its profile; the
    // convolution collapses onto the other mode's profile times the traced
    // mass of this one.
    if (s1 == 0.0 || s2 == 0.0) {
        const int live = (s1 == 0.0) ? 1 : 0;
        const Grid1D& gq = live == 0 ? q1_ : q2_;
        const Grid1D& gp = live == 0 ? p1_ : p2_;
        double acc = 0.0;
        for (const Pair& pr : pairs_) {
            const auto& table = live == 0 ? pr.w1 : pr.w2;
            cdouble prof = line_integral(gq, gp,
                                         std::span<const cdouble>(table),
                                         q.mu[live], q.nu[live], q.X);
            cdouble mass = mode_mass(1 - live, live == 0 ? pr.w2 : pr.w1);
            acc += pr.coeff * (prof * mass).real();
        }
        return acc / (kTwoPi * kTwoPi);
    }

    const double r1 = std::hypot(q1_.max, p1_.max) * std::sqrt(s1);
    const double r2 = std::hypot(q2_.max, p2_.max) * std::sqrt(s2);
    const int ns = 321;
    Grid1D sg1(-r1, r1, ns);
    double acc = 0.0;
    std::vector<cdouble> prof1, prof2;
    for (const Pair& pr : pairs_) {
        mode_profile(0, pr.w1, q.mu[0], q.nu[0], sg1, prof1);
        // second profile sampled where the convolution needs it
        Grid1D sg2(-r2, r2, ns);
        mode_profile(1, pr.w2, q.mu[1], q.nu[1], sg2, prof2);
        cdouble conv = 0.0;
        for (int i = 0; i < ns; ++i) {
            double s = sg1.node(i);
            double target = q.X - s;
            if (target < sg2.min || target > sg2.max) continue;
            conv += trapezoid_weight(sg1, i) * prof1[i] *
                    interp_cubic(sg2, std::span<const cdouble>(prof2), target);
        }
        acc += pr.coeff * conv.real();
    }
    return acc / (kTwoPi * kTwoPi);
}

std::vector<double> TwoModeRadonOracle::batch(
    const std::vector<TomographicQuery>& qs, Exec exec) const {
    std::vector<double> out(qs.size());
    parallel_for((std::int64_t)qs.size(), exec,
                 [&](std::int64_t i) { out[i] = (*this)(qs[i]); });
    return out;
}

CmTomogram TwoModeRadonOracle::as_callable() const {
    return [this](const TomographicQuery& q) { return (*this)(q); };
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

struct CmGaussianData {
    double m;  // sqrt2 sum(mu R alpha + nu I alpha)
    double t;  // sqrt2 sum(nu R alpha - mu I alpha)
    double a2; // sum |alpha|^2
};

CmGaussianData cm_data(std::span<const cdouble> alphas,
                       const TomographicQuery& q) {
    CmGaussianData d{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        double re = alphas[j].real(), im = alphas[j].imag();
        d.m += q.mu[j] * re + q.nu[j] * im;
        d.t += q.nu[j] * re - q.mu[j] * im;
        d.a2 += re * re + im * im;
    }
    d.m *= std::sqrt(2.0);
    d.t *= std::sqrt(2.0);
    return d;
}

} // namespace

double cm_tomogram_analytic(const CoherentState& s,
                            const TomographicQuery& q) {
    if (q.modes() != s.modes())
        throw ArgumentError("cm_tomogram_analytic: query mode mismatch");
    const double sig = q.sigma();
    CmGaussianData d = cm_data(s.alphas, q);
    double u = q.X - d.m;
    return std::exp(-u * u / sig) / std::sqrt(kPi * sig);
}

double cm_tomogram_analytic(const CatState& s, const TomographicQuery& q) {
    if (q.modes() != s.modes())
        throw ArgumentError("cm_tomogram_analytic: query mode mismatch");
    const double sig = q.sigma();
    CmGaussianData d = cm_data(s.alphas, q);
    const double n2 = 1.0 / (2.0 + s.parity * 2.0 * std::exp(-2.0 * d.a2));
    const double um = q.X - d.m, up = q.X + d.m;
    double direct = std::exp(-um * um / sig) + std::exp(-up * up / sig);
    double cross = 2.0 * std::exp(-2.0 * d.a2) *
                   std::exp((d.t * d.t - q.X * q.X) / sig) *
                   std::cos(2.0 * q.X * d.t / sig);
    double val = n2 * (direct + s.parity * cross) / std::sqrt(kPi * sig);
    return val;
}

// ---------------------------------------------------------------------------
// Symplectic tomograms

namespace {

// Momentum representation of one mode: phi(p) = (2 pi)^{-1/2} int psi e^{-ipy} dy.
// Returns the new axis and replaces the samples.
Grid1D mode_to_momentum(Eigen::MatrixXcd& samples, const Grid1D& axis,
                        int mode) {
    const int n = axis.points;
    Grid1D pg(axis.min, axis.max, n);
    Eigen::MatrixXcd f(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            f(k, i) = trapezoid_weight(axis, i) *
                      std::exp(cdouble(0.0, -pg.node(k) * axis.node(i))) /
                      std::sqrt(kTwoPi);
    if (mode == 0)
        samples = f * samples;
    else
        samples = samples * f.transpose();
    return pg;
}

struct ModeKernel {
    Grid1D axis;      // effective axis (position or momentum)
    double mu, nu;    // effective scaling after a possible side swap
    double prefactor; // (2 pi |nu_eff|)^{-1}
};

// Chirp-contract one mode: out(j) = int K(y) col(y, j) dy with
// K(y) = exp(i mu y^2 / (2 nu) - i X y / nu), oversampled with cubic
// interpolation of the samples.
void contract_mode(const ModeKernel& mk, double X,
                   const Eigen::MatrixXcd& samples, bool first_mode,
                   Eigen::VectorXcd& out) {
    const Grid1D& g = mk.axis;
    const double ymax = std::max(std::abs(g.min), g.max);
    const double rate = std::abs(mk.mu / mk.nu) * ymax +
                        std::abs(X / mk.nu) + ymax + 8.0;
    const double span = g.max - g.min;
    int nf = std::max(513, (int)std::ceil(span * rate / 2.0)) | 1;
    nf = std::min(nf, 40001);
    Grid1D fg(g.min, g.max, nf);

    const int ncols = first_mode ? (int)samples.cols() : 1;
    out.resize(first_mode ? samples.cols() : 1);
    std::vector<cdouble> kernel(nf);
    for (int i = 0; i < nf; ++i) {
        double y = fg.node(i);
        kernel[i] = trapezoid_weight(fg, i) *
                    std::exp(cdouble(0.0, 0.5 * mk.mu * y * y / mk.nu -
                                              X * y / mk.nu));
    }
    for (int j = 0; j < ncols; ++j) {
        std::span<const cdouble> col(first_mode ? &samples(0, j)
                                                : samples.data(),
                                     (std::size_t)samples.rows());
        cdouble acc = 0.0;
        for (int i = 0; i < nf; ++i)
            acc += kernel[i] * interp_cubic(g, col, fg.node(i));
        out(j) = acc;
    }
}

} // namespace

double symplectic_tomogram(const GridWavefunction& psi,
                           const SymplecticQuery& q) {
    if (q.modes() != psi.modes)
        throw ArgumentError("symplectic_tomogram: query mode mismatch");
    if (psi.modes > 2)
        throw ArgumentError("symplectic_tomogram: at most two modes");

    Eigen::MatrixXcd samples = psi.samples;
    std::vector<ModeKernel> mk(psi.modes);
    for (int m = 0; m < psi.modes; ++m) {
        double mu = q.mu[m], nu = q.nu[m];
        if (std::abs(nu) >= std::abs(mu)) {
            mk[m] = {psi.axes[m], mu, nu, 1.0 / (kTwoPi * std::abs(nu))};
        } else {
            // momentum side: w_psi(X, mu, nu) = w_phi(X, nu, -mu)
            Grid1D pg = mode_to_momentum(samples, psi.axes[m], m);
            mk[m] = {pg, nu, -mu, 1.0 / (kTwoPi * std::abs(mu))};
        }
    }

    if (psi.modes == 1) {
        Eigen::VectorXcd amp;
        contract_mode(mk[0], q.X[0], samples, false, amp);
        return mk[0].prefactor * std::norm(amp(0));
    }

    Eigen::VectorXcd partial;
    contract_mode(mk[0], q.X[0], samples, true, partial);
    Eigen::MatrixXcd rest = partial; // column vector over mode-2 axis
    Eigen::VectorXcd amp;
    contract_mode(mk[1], q.X[1], rest, false, amp);
    return mk[0].prefactor * mk[1].prefactor * std::norm(amp(0));
}

Eigen::MatrixXd symplectic_tomogram_batch(const GridWavefunction& psi,
                                          const std::vector<double>& mu,
                                          const std::vector<double>& nu,
                                          const Grid1D& x1, const Grid1D& x2,
                                          Exec exec) {
    if (psi.modes != 2)
        throw ArgumentError("symplectic_tomogram_batch: two modes required");
    SymplecticQuery probe({0.0, 0.0}, mu, nu); // validates (mu_j, nu_j)

    Eigen::MatrixXcd samples = psi.samples;
    ModeKernel mk[2];
    for (int m = 0; m < 2; ++m) {
        if (std::abs(nu[m]) >= std::abs(mu[m])) {
            mk[m] = {psi.axes[m], mu[m], nu[m],
                     1.0 / (kTwoPi * std::abs(nu[m]))};
        } else {
            Grid1D pg = mode_to_momentum(samples, psi.axes[m], m);
            mk[m] = {pg, nu[m], -mu[m], 1.0 / (kTwoPi * std::abs(mu[m]))};
        }
    }

    // fine grids with the chirp folded in, then Fourier factors per X
    auto fine_grid = [&](const ModeKernel& k, double xmax) {
        const double ymax = std::max(std::abs(k.axis.min), k.axis.max);
        double rate = std::abs(k.mu / k.nu) * ymax + xmax / std::abs(k.nu) +
                      ymax + 8.0;
        int nf = std::max(513, (int)std::ceil((k.axis.max - k.axis.min) *
                                              rate / 2.0)) |
                 1;
        return Grid1D(k.axis.min, k.axis.max, std::min(nf, 8193));
    };
    double x1max = std::max(std::abs(x1.min), x1.max);
    double x2max = std::max(std::abs(x2.min), x2.max);
    Grid1D f1 = fine_grid(mk[0], x1max);
    Grid1D f2 = fine_grid(mk[1], x2max);

    // interpolate samples onto the fine grid and fold in the chirps
    Eigen::MatrixXcd fine(f1.points, f2.points);
    {
        Eigen::MatrixXcd stage(f1.points, samples.cols());
        for (int j = 0; j < samples.cols(); ++j) {
            std::span<const cdouble> col(&samples(0, j),
                                         (std::size_t)samples.rows());
            for (int i = 0; i < f1.points; ++i)
                stage(i, j) = interp_cubic(mk[0].axis, col, f1.node(i));
        }
        Eigen::MatrixXcd staget = stage.transpose();
        for (int i = 0; i < f1.points; ++i) {
            std::span<const cdouble> row(&staget(0, i),
                                         (std::size_t)staget.rows());
            for (int j = 0; j < f2.points; ++j)
                fine(i, j) = interp_cubic(mk[1].axis, row, f2.node(j));
        }
        for (int i = 0; i < f1.points; ++i) {
            double y = f1.node(i);
            cdouble c1 = std::exp(
                cdouble(0.0, 0.5 * mk[0].mu * y * y / mk[0].nu));
            fine.row(i) *= c1 * trapezoid_weight(f1, i);
        }
        for (int j = 0; j < f2.points; ++j) {
            double y = f2.node(j);
            cdouble c2 = std::exp(
                cdouble(0.0, 0.5 * mk[1].mu * y * y / mk[1].nu));
            fine.col(j) *= c2 * trapezoid_weight(f2, j);
        }
    }

    Eigen::MatrixXcd e1(x1.points, f1.points);
    for (int a = 0; a < x1.points; ++a)
        for (int i = 0; i < f1.points; ++i)
            e1(a, i) = std::exp(
                cdouble(0.0, -x1.node(a) * f1.node(i) / mk[0].nu));
    Eigen::MatrixXcd e2(f2.points, x2.points);
    for (int j = 0; j < f2.points; ++j)
        for (int b = 0; b < x2.points; ++b)
            e2(j, b) = std::exp(
                cdouble(0.0, -x2.node(b) * f2.node(j) / mk[1].nu));

    Eigen::MatrixXcd amp = e1 * fine * e2;
    Eigen::MatrixXd out(x1.points, x2.points);
    const double pref = mk[0].prefactor * mk[1].prefactor;
    parallel_for(x1.points, exec, [&](std::int64_t a) {
        for (int b = 0; b < x2.points; ++b)
            out((int)a, b) = pref * std::norm(amp((int)a, b));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Map conversions

double cm_from_symplectic(const SymplecticTomogram& ws,
                          const TomographicQuery& q, double y_half,
                          int y_points) {
    const int n = q.modes();
    if (n == 1) {
        return ws(SymplecticQuery({q.X}, q.mu, q.nu));
    }
    if (n != 2)
        throw ArgumentError("cm_from_symplectic: N in {1, 2} only");
    Grid1D yg(-y_half, y_half, y_points);
    double acc = 0.0;
    for (int i = 0; i < yg.points; ++i) {
        double y1 = yg.node(i);
        acc += trapezoid_weight(yg, i) *
               ws(SymplecticQuery({y1, q.X - y1}, q.mu, q.nu));
    }
    return acc;
}

cdouble scaled_profile_transform(const CmTomogram& w,
                                 const std::vector<double>& a,
                                 const std::vector<double>& b, double k,
                                 const Grid1D& zg) {
    std::vector<double> am(a.size()), bm(b.size());
    cdouble acc = 0.0;
    if (k == 0.0) {
        for (int i = 0; i < zg.points; ++i)
            acc += trapezoid_weight(zg, i) *
                   w(TomographicQuery(zg.node(i), a, b));
        return acc;
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        am[j] = k * a[j];
        bm[j] = k * b[j];
    }
    for (int i = 0; i < zg.points; ++i) {
        double z = zg.node(i);
        acc += trapezoid_weight(zg, i) *
               w(TomographicQuery(k * z, am, bm)) *
               std::exp(cdouble(0.0, k * z));
    }
    return acc * std::abs(k);
}

cdouble fourier_profile(const CmTomogram& w, const std::vector<double>& mu,
                        const std::vector<double>& nu, double z_half,
                        int base_points) {
    double sigma = 0.0;
    for (double v : mu) sigma += v * v;
    for (double v : nu) sigma += v * v;
    const double s = std::sqrt(sigma);
    int n = std::max(base_points,
                     (int)std::ceil(2.0 * z_half * s * 4.0 / kPi)) |
            1;
    n = std::min(n, 20001);
    Grid1D zg(-z_half, z_half, n);
    cdouble acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double y = s * zg.node(i);
        acc += trapezoid_weight(zg, i) * w(TomographicQuery(y, mu, nu)) *
               std::exp(cdouble(0.0, y));
    }
    return acc * s;
}

namespace {

// Richardson extrapolation of J(eps) -> J(0) assuming J = J0 + c eps, using
// the two smallest epsilons (assumed to decrease by a constant ratio).
cdouble extrapolate(const std::vector<double>& eps,
                    const std::vector<cdouble>& vals) {
    if (vals.size() == 1) return vals[0];
    const std::size_t n = vals.size();
    double r = eps[n - 2] / eps[n - 1];
    return (r * vals[n - 1] - vals[n - 2]) / (r - 1.0);
}

KIntegralOptions resolve_k_options(const KIntegralOptions& opts, double sigma,
                                   double x_abs) {
    KIntegralOptions o = opts;
    if (o.k_half <= 0.0)
        o.k_half = std::clamp(13.0 / std::sqrt(std::max(sigma, 0.05)), 4.0,
                              60.0);
    if (o.k_points <= 0) {
        double dk = kPi / (4.0 * std::max(x_abs, 1.5));
        o.k_points = std::clamp((int)std::ceil(2.0 * o.k_half / dk) | 1, 201,
                                4001);
    }
    return o;
}

} // namespace

double symplectic_from_cm(const CmTomogram& wcm, const SymplecticQuery& q,
                          const KIntegralOptions& opts) {
    const int n = q.modes();
    if (n == 1) {
        double sigma = q.mu[0] * q.mu[0] + q.nu[0] * q.nu[0];
        KIntegralOptions o =
            resolve_k_options(opts, sigma, std::abs(q.X[0]));
        Grid1D kg(-o.k_half, o.k_half, o.k_points | 1);
        Grid1D zg(-o.z_half, o.z_half, o.z_points);
        std::vector<cdouble> ik(kg.points);
        for (int i = 0; i < kg.points; ++i)
            ik[i] = scaled_profile_transform(wcm, q.mu, q.nu, kg.node(i), zg);
        std::vector<cdouble> vals;
        for (double e : o.epsilons) {
            cdouble acc = 0.0;
            for (int i = 0; i < kg.points; ++i) {
                double k = kg.node(i);
                acc += trapezoid_weight(kg, i) * ik[i] *
                       std::exp(cdouble(-e * k * k, -k * q.X[0]));
            }
            vals.push_back(acc / kTwoPi);
        }
        return extrapolate(opts.epsilons, vals).real();
    }
    if (n != 2)
        throw ArgumentError("symplectic_from_cm: N in {1, 2} only");

    const double s1 = q.mu[0] * q.mu[0] + q.nu[0] * q.nu[0];
    const double s2 = q.mu[1] * q.mu[1] + q.nu[1] * q.nu[1];
    KIntegralOptions o1 =
        resolve_k_options(opts, s1, std::abs(q.X[0]));
    KIntegralOptions o2 =
        resolve_k_options(opts, s2, std::abs(q.X[1]));
    // even node counts avoid k = (0, 0) exactly
    int n1 = std::min(o1.k_points + 1, 402) & ~1;
    int n2 = std::min(o2.k_points + 1, 402) & ~1;
    Grid1D k1(-o1.k_half, o1.k_half, n1);
    Grid1D k2(-o2.k_half, o2.k_half, n2);
    Grid1D zg(-opts.z_half, opts.z_half, opts.z_points);

    std::vector<cdouble> inner((std::size_t)n1 * n2);
    std::vector<double> am(2), bm(2);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            double ka = k1.node(i), kb = k2.node(j);
            double s = std::max(std::abs(ka), std::abs(kb));
            am[0] = ka * q.mu[0];
            am[1] = kb * q.mu[1];
            bm[0] = ka * q.nu[0];
            bm[1] = kb * q.nu[1];
            cdouble acc = 0.0;
            for (int z = 0; z < zg.points; ++z) {
                double Y = s * zg.node(z);
                acc += trapezoid_weight(zg, z) *
                       wcm(TomographicQuery(Y, am, bm)) *
                       std::exp(cdouble(0.0, Y));
            }
            inner[(std::size_t)i * n2 + j] = acc * s;
        }
    }
    std::vector<cdouble> vals;
    for (double e : opts.epsilons) {
        cdouble acc = 0.0;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                double ka = k1.node(i), kb = k2.node(j);
                acc += trapezoid_weight(k1, i) * trapezoid_weight(k2, j) *
                       inner[(std::size_t)i * n2 + j] *
                       std::exp(cdouble(-e * (ka * ka + kb * kb),
                                        -(ka * q.X[0] + kb * q.X[1])));
            }
        vals.push_back(acc / (kTwoPi * kTwoPi));
    }
    return extrapolate(opts.epsilons, vals).real();
}

// ---------------------------------------------------------------------------
// Cluster tomograms

double cluster_tomogram(const GridWavefunction& psi,
                        const ClusterPartition& part, const ClusterQuery& q) {
    if (part.total_modes() != psi.modes)
        throw ArgumentError("cluster_tomogram: partition does not cover the "
                            "state's modes");
    if ((int)q.X.size() != part.subsystems() ||
        (int)q.mu.size() != psi.modes || (int)q.nu.size() != psi.modes)
        throw ArgumentError("cluster_tomogram: query shape mismatch");

    if (part.subsystems() == 1) {
        // r = 1: center-of-mass map
        TomographicQuery cq(q.X[0], q.mu, q.nu);
        if (psi.modes == 1) {
            PhaseSpaceGrid ps = PhaseSpaceGrid::for_wavefunction(psi);
            WignerGrid w = wigner_from_wavefunction(psi, ps);
            return cm_tomogram_from_wigner(w, cq);
        }
        TwoModeRadonOracle oracle(psi);
        return oracle(cq);
    }
    if (part.subsystems() == psi.modes) {
        // r = N: symplectic map
        return symplectic_tomogram(psi, SymplecticQuery(q.X, q.mu, q.nu));
    }
    throw NotImplementedError(
        "cluster_tomogram: only the r = 1 and r = N partitions are "
        "implemented for grid states");
}

double subsystem_cm_tomogram(const CmTomogram& wcm, int subsystem,
                             const ClusterPartition& part,
                             const TomographicQuery& q,
                             const KIntegralOptions& opts) {
    const int total = part.total_modes();
    const int nk = part.sizes.at(subsystem);
    if (q.modes() != nk)
        throw ArgumentError(
            "subsystem_cm_tomogram: query must match the subsystem size");
    std::vector<double> a(total, 0.0), b(total, 0.0);
    const int off = part.offset(subsystem);
    for (int j = 0; j < nk; ++j) {
        a[off + j] = q.mu[j];
        b[off + j] = q.nu[j];
    }
    double sigma = q.sigma();
    KIntegralOptions o = resolve_k_options(opts, sigma, std::abs(q.X));
    Grid1D kg(-o.k_half, o.k_half, o.k_points | 1);
    Grid1D zg(-o.z_half, o.z_half, o.z_points);
    std::vector<cdouble> ik(kg.points);
    for (int i = 0; i < kg.points; ++i)
        ik[i] = scaled_profile_transform(wcm, a, b, kg.node(i), zg);
    std::vector<cdouble> vals;
    for (double e : o.epsilons) {
        cdouble acc = 0.0;
        for (int i = 0; i < kg.points; ++i) {
            double k = kg.node(i);
            acc += trapezoid_weight(kg, i) * ik[i] *
                   std::exp(cdouble(-e * k * k, -k * q.X));
        }
        vals.push_back(acc / kTwoPi);
    }
    return extrapolate(o.epsilons, vals).real();
}

// ---------------------------------------------------------------------------
// Property helpers

double tomogram_normalization(const CmTomogram& w, const TomographicQuery& q,
                              double x_half, int points) {
    Grid1D xg(-x_half, x_half, points);
    double acc = 0.0;
    for (int i = 0; i < xg.points; ++i)
        acc += trapezoid_weight(xg, i) *
               w(TomographicQuery(xg.node(i), q.mu, q.nu));
    return acc;
}

double tomogram_moment(const CmTomogram& w, const TomographicQuery& q, int n,
                       double x_half, int points) {
    if (n < 1 || n > 2)
        throw ArgumentError("tomogram_moment: order must be 1 or 2");
    Grid1D xg(-x_half, x_half, points);
    double acc = 0.0;
    for (int i = 0; i < xg.points; ++i) {
        double x = xg.node(i);
        acc += trapezoid_weight(xg, i) * std::pow(x, n) *
               w(TomographicQuery(x, q.mu, q.nu));
    }
    return acc;
}

} // namespace tomokit
