#include "tomokit/states.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

namespace {

double max_abs(const std::vector<cdouble>& v) {
    double m = 0.0;
    for (const auto& a : v) m = std::max(m, std::abs(a));
    return m;
}

void check_alphas(const std::vector<cdouble>& v) {
    if (v.empty()) throw InvalidStateError("state needs at least one mode");
    for (const auto& a : v)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvalidStateError("state amplitudes must be finite");
}

cdouble coherent_eval(std::span<const cdouble> alphas,
                      std::span<const double> x) {
    const int n = (int)alphas.size();
    cdouble expo = 0.0;
    for (int j = 0; j < n; ++j) {
        const cdouble a = alphas[j];
        expo += -0.5 * x[j] * x[j] + std::sqrt(2.0) * (a * x[j]) -
                0.5 * std::norm(a) - 0.5 * (a * a);
    }
    return std::pow(kPi, -0.25 * n) * std::exp(expo);
}

} // namespace

CoherentState::CoherentState(std::vector<cdouble> a) : alphas(std::move(a)) {
    check_alphas(alphas);
}

double CoherentState::max_abs_alpha() const { return max_abs(alphas); }

CatState::CatState(std::vector<cdouble> a, int sign)
    : alphas(std::move(a)), parity(sign) {
    check_alphas(alphas);
    if (parity != +1 && parity != -1)
        throw InvalidStateError("cat parity must be +1 or -1");
    if (parity == -1 && max_abs_alpha() == 0.0)
        throw InvalidStateError(
            "odd cat with all alphas zero is the zero vector, not a state");
}

double CatState::max_abs_alpha() const { return max_abs(alphas); }

double cat_normalization(std::span<const cdouble> alphas, int parity) {
    double a2 = 0.0;
    for (const auto& a : alphas) a2 += std::norm(a);
    if (parity == -1 && a2 == 0.0)
        throw InvalidStateError("degenerate odd cat (all alphas zero)");
    double inv_sq = 2.0 + parity * 2.0 * std::exp(-2.0 * a2);
    return 1.0 / std::sqrt(inv_sq);
}

cdouble coherent_wavefunction(const CoherentState& s,
                              std::span<const double> x) {
    if ((int)x.size() != s.modes())
        throw ArgumentError("coherent_wavefunction: dim(x) != modes");
    return coherent_eval(s.alphas, x);
}

cdouble cat_wavefunction(const CatState& s, std::span<const double> x) {
    if ((int)x.size() != s.modes())
        throw ArgumentError("cat_wavefunction: dim(x) != modes");
    std::vector<cdouble> neg(s.alphas.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -s.alphas[j];
    double n = cat_normalization(s.alphas, s.parity);
    cdouble plus = coherent_eval(s.alphas, x);
    cdouble minus = coherent_eval(neg, x);
    return n * (s.parity > 0 ? plus + minus : plus - minus);
}

double GridWavefunction::norm() const {
    if (modes == 1) {
        std::vector<double> f(axes[0].points);
        for (int i = 0; i < axes[0].points; ++i) f[i] = std::norm(samples(i, 0));
        return std::sqrt(trapezoid(axes[0], f));
    }
    std::vector<double> row(axes[0].points);
    std::vector<double> col(axes[1].points);
    for (int i = 0; i < axes[0].points; ++i) {
        for (int j = 0; j < axes[1].points; ++j) col[j] = std::norm(samples(i, j));
        row[i] = trapezoid(axes[1], col);
    }
    return std::sqrt(trapezoid(axes[0], row));
}

double GridWavefunction::mean_position(int mode) const {
    const Grid1D& g = axes.at(mode);
    double acc = 0.0;
    if (modes == 1) {
        for (int i = 0; i < g.points; ++i)
            acc += trapezoid_weight(g, i) * g.node(i) * std::norm(samples(i, 0));
        return acc;
    }
    const Grid1D& other = axes[1 - mode];
    for (int i = 0; i < g.points; ++i) {
        double marg = 0.0;
        for (int j = 0; j < other.points; ++j) {
            cdouble v = (mode == 0) ? samples(i, j) : samples(j, i);
            marg += trapezoid_weight(other, j) * std::norm(v);
        }
        acc += trapezoid_weight(g, i) * g.node(i) * marg;
    }
    return acc;
}

double GridWavefunction::mean_momentum(int mode) const {
    // <p> = Im int conj(psi) dpsi/dx dx with a fourth-order stencil
    const Grid1D& g = axes.at(mode);
    const double h = g.spacing();
    cdouble acc = 0.0;
    auto at = [&](int i, int j) {
        if (modes == 1) return samples(i, 0);
        return (mode == 0) ? samples(i, j) : samples(j, i);
    };
    const int nj = (modes == 1) ? 1 : axes[1 - mode].points;
    for (int j = 0; j < nj; ++j) {
        double wj = (modes == 1) ? 1.0 : trapezoid_weight(axes[1 - mode], j);
        for (int i = 2; i < g.points - 2; ++i) {
            cdouble d = (8.0 * (at(i + 1, j) - at(i - 1, j)) -
                         (at(i + 2, j) - at(i - 2, j))) /
                        (12.0 * h);
            acc += wj * trapezoid_weight(g, i) * std::conj(at(i, j)) * d;
        }
    }
    return acc.imag();
}

double GridDensityMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < axis.points; ++i)
        t += trapezoid_weight(axis, i) * samples(i, i).real();
    return t;
}

double GridDensityMatrix::purity() const {
    // Tr rho^2 = int |rho(x,x')|^2 dx dx'
    double h = axis.spacing();
    return h * h * samples.squaredNorm();
}

double GridDensityMatrix::herm_residual() const {
    return (samples - samples.adjoint()).cwiseAbs().maxCoeff();
}

double GridDensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd m = 0.5 * (samples + samples.adjoint()) * axis.spacing();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Grid1D default_axis(double max_abs_alpha, int points) {
    return Grid1D::symmetric(std::sqrt(2.0) * max_abs_alpha, points);
}

namespace {

template <typename State, typename Eval>
GridWavefunction discretize_impl(const State& s, std::vector<Grid1D> axes,
                                 double tol_norm, Exec exec, const Eval& eval) {
    if (s.modes() > 2)
        throw ArgumentError("discretize supports at most two modes");
    if ((int)axes.size() != s.modes())
        throw ArgumentError("discretize: one axis per mode required");

    GridWavefunction out;
    out.modes = s.modes();
    out.axes = std::move(axes);
    const int n0 = out.axes[0].points;
    const int n1 = (out.modes == 2) ? out.axes[1].points : 1;
    out.samples.resize(n0, n1);
    if (out.modes == 1) {
        parallel_for(n0, exec, [&](std::int64_t i) {
            double x[1] = {out.axes[0].node((int)i)};
            out.samples((int)i, 0) = eval(std::span<const double>(x, 1));
        });
    } else {
        parallel_for(n0, exec, [&](std::int64_t i) {
            double x[2];
            x[0] = out.axes[0].node((int)i);
            for (int j = 0; j < n1; ++j) {
                x[1] = out.axes[1].node(j);
                out.samples((int)i, j) = eval(std::span<const double>(x, 2));
            }
        });
    }
    double nrm = out.norm();
    if (std::abs(nrm - 1.0) > tol_norm)
        throw GridCoverageError("discretize: quadrature norm " +
                                format_double(nrm) +
                                " deviates from 1 beyond tol_norm; widen the grid");
    return out;
}

} // namespace

GridWavefunction discretize(const CoherentState& s, std::vector<Grid1D> axes,
                            double tol_norm, Exec exec) {
    return discretize_impl(s, std::move(axes), tol_norm, exec,
                           [&](std::span<const double> x) {
                               return coherent_wavefunction(s, x);
                           });
}

GridWavefunction discretize(const CatState& s, std::vector<Grid1D> axes,
                            double tol_norm, Exec exec) {
    return discretize_impl(
        s, std::move(axes), tol_norm, exec,
        [&](std::span<const double> x) { return cat_wavefunction(s, x); });
}

GridDensityMatrix reduce_to_mode(const GridWavefunction& psi, int keep,
                                 Exec exec) {
    if (psi.modes != 2)
        throw ArgumentError("reduce_to_mode needs a two-mode state");
    if (keep != 0 && keep != 1)
        throw ArgumentError("reduce_to_mode: keep must be 0 or 1");

    const Grid1D& kept = psi.axes[keep];
    const Grid1D& traced = psi.axes[1 - keep];
    GridDensityMatrix rho;
    rho.axis = kept;
    rho.samples.resize(kept.points, kept.points);
    // rho(x, x') = int psi(x, y) conj(psi(x', y)) dy
    parallel_for(kept.points, exec, [&](std::int64_t i) {
        for (int j = 0; j < kept.points; ++j) {
            cdouble acc = 0.0;
            for (int y = 0; y < traced.points; ++y) {
                cdouble a = (keep == 0) ? psi.samples((int)i, y)
                                        : psi.samples(y, (int)i);
                cdouble b = (keep == 0) ? psi.samples(j, y) : psi.samples(y, j);
                acc += trapezoid_weight(traced, y) * a * std::conj(b);
            }
            rho.samples((int)i, j) = acc;
        }
    });
    return rho;
}

double fidelity(const GridDensityMatrix& rho, std::span<const cdouble> psi) {
    if ((int)psi.size() != rho.axis.points)
        throw ArgumentError("fidelity: sample count does not match axis");
    const double h = rho.axis.spacing();
    cdouble acc = 0.0;
    for (int i = 0; i < rho.axis.points; ++i)
        for (int j = 0; j < rho.axis.points; ++j)
            acc += std::conj(psi[i]) * rho.samples(i, j) * psi[j];
    return (acc * h * h).real();
}

std::vector<SchmidtTerm> schmidt_decompose(const GridWavefunction& psi,
                                           double cutoff) {
    if (psi.modes != 2)
        throw ArgumentError("schmidt_decompose needs a two-mode state");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        psi.samples, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double h0 = psi.axes[0].spacing();
    const double h1 = psi.axes[1].spacing();
    std::vector<SchmidtTerm> terms;
    for (int r = 0; r < svd.singularValues().size(); ++r) {
        double w = svd.singularValues()(r) * std::sqrt(h0 * h1);
        if (w <= cutoff) break;
        SchmidtTerm t;
        t.weight = w;
        t.left = svd.matrixU().col(r) / std::sqrt(h0);
        t.right = svd.matrixV().col(r).conjugate() / std::sqrt(h1);
        terms.push_back(std::move(t));
    }
    return terms;
}

} // namespace tomokit
