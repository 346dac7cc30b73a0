#include "tomokit/weyl.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

#include "tomokit/errors.hpp"

namespace tomokit {

namespace {

std::atomic<bool> nyquist_warned{false};

void maybe_warn_nyquist(const Grid1D& qaxis, const Grid1D& paxis) {
    double limit = kPi / qaxis.spacing();
    if (paxis.max < limit && !nyquist_warned.exchange(true)) {
        std::cerr << "tomokit: warning: momentum grid max " << paxis.max
                  << " is below pi/dx = " << limit
                  << "; high-momentum content may be truncated\n";
    }
}

} // namespace

PhaseSpaceGrid PhaseSpaceGrid::for_wavefunction(const GridWavefunction& psi,
                                                int p_points) {
    PhaseSpaceGrid g;
    for (int m = 0; m < psi.modes; ++m) {
        const Grid1D& ax = psi.axes[m];
        int np = p_points > 0 ? p_points : ax.points;
        g.q.push_back(ax);
        g.p.push_back(Grid1D(ax.min, ax.max, np));
        maybe_warn_nyquist(g.q.back(), g.p.back());
    }
    return g;
}

double WignerGrid::normalization() const {
    const int n = grid.modes();
    double total = 0.0;
    if (n == 1) {
        const Grid1D& gq = grid.q[0];
        const Grid1D& gp = grid.p[0];
        for (int i = 0; i < gq.points; ++i)
            for (int j = 0; j < gp.points; ++j)
                total += trapezoid_weight(gq, i) * trapezoid_weight(gp, j) *
                         samples[(std::size_t)i * gp.points + j];
        return total / kTwoPi;
    }
    const Grid1D &g1 = grid.q[0], &g2 = grid.p[0], &g3 = grid.q[1],
                 &g4 = grid.p[1];
    std::size_t idx = 0;
    for (int i = 0; i < g1.points; ++i)
        for (int j = 0; j < g2.points; ++j)
            for (int k = 0; k < g3.points; ++k)
                for (int l = 0; l < g4.points; ++l, ++idx)
                    total += trapezoid_weight(g1, i) * trapezoid_weight(g2, j) *
                             trapezoid_weight(g3, k) * trapezoid_weight(g4, l) *
                             samples[idx];
    return total / (kTwoPi * kTwoPi);
}

double WignerGrid::value(double q, double p) const {
    if (grid.modes() != 1)
        throw ArgumentError("WignerGrid::value: single mode only");
    return interp_bilinear(grid.q[0], grid.p[0], samples, q, p);
}

WeylSymbolGrid WeylSymbolGrid::constant(const Grid1D& q, const Grid1D& p,
                                        cdouble value) {
    WeylSymbolGrid w;
    w.q = q;
    w.p = p;
    w.samples = Eigen::MatrixXcd::Constant(q.points, p.points, value);
    w.constant_tag = true;
    return w;
}

double WeylSymbolGrid::edge_max_abs() const {
    double m = 0.0;
    const int nq = q.points, np = p.points;
    for (int j = 0; j < np; ++j) {
        m = std::max(m, std::abs(samples(0, j)));
        m = std::max(m, std::abs(samples(nq - 1, j)));
    }
    for (int i = 0; i < nq; ++i) {
        m = std::max(m, std::abs(samples(i, 0)));
        m = std::max(m, std::abs(samples(i, np - 1)));
    }
    return m;
}

Eigen::MatrixXcd cross_wigner(const Grid1D& axis, const Eigen::VectorXcd& f,
                              const Eigen::VectorXcd& g, const Grid1D& pgrid,
                              Exec exec) {
    const int n = axis.points;
    if (f.size() != n || g.size() != n)
        throw ArgumentError("cross_wigner: sample count does not match axis");
    const int np = pgrid.points;
    const double h = axis.spacing();

    // phase table e^{-i p * 2h d} for node differences d = i - j
    Eigen::MatrixXcd phase(np, 2 * n - 1);
    for (int k = 0; k < np; ++k) {
        double p = pgrid.node(k);
        for (int d = -(n - 1); d <= n - 1; ++d)
            phase(k, d + n - 1) = std::exp(cdouble(0.0, -2.0 * p * h * d));
    }

    Eigen::MatrixXcd out(n, np);
    parallel_for(n, exec, [&](std::int64_t jj) {
        const int j = (int)jj;
        const int ilo = std::max(0, 2 * j - (n - 1));
        const int ihi = std::min(n - 1, 2 * j);
        for (int k = 0; k < np; ++k) {
            cdouble acc = 0.0;
            for (int i = ilo; i <= ihi; ++i) {
                double w = (i == ilo || i == ihi) ? h : 2.0 * h;
                acc += w * f(i) * std::conj(g(2 * j - i)) *
                       phase(k, i - j + n - 1);
            }
            out(j, k) = acc;
        }
    });
    return out;
}

namespace {

// The u-quadrature nodes are tied to the wavefunction grid, so the output
// q nodes must be a subset of the state's axis nodes (the axis itself or an
// aligned coarser grid).
std::vector<int> aligned_indices(const Grid1D& fine, const Grid1D& coarse) {
    std::vector<int> idx(coarse.points);
    for (int i = 0; i < coarse.points; ++i) {
        double u = (coarse.node(i) - fine.min) / fine.spacing();
        int j = (int)std::llround(u);
        if (j < 0 || j >= fine.points || std::abs(u - j) > 1e-9)
            throw ArgumentError(
                "wigner_from_wavefunction: q grid nodes must lie on the "
                "state's axis nodes");
        idx[i] = j;
    }
    return idx;
}

WignerGrid wigner_one_mode(const GridWavefunction& psi,
                           const PhaseSpaceGrid& grid, Exec exec) {
    auto rows = aligned_indices(psi.axes[0], grid.q[0]);
    Eigen::MatrixXcd w =
        cross_wigner(psi.axes[0], psi.samples.col(0), psi.samples.col(0),
                     grid.p[0], exec);
    WignerGrid out;
    out.grid = grid;
    const int np = grid.p[0].points;
    out.samples.resize((std::size_t)rows.size() * np);
    double resid = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < np; ++j) {
            out.samples[i * np + j] = w(rows[i], j).real();
            resid = std::max(resid, std::abs(w(rows[i], j).imag()));
        }
    out.imag_residual = resid;
    return out;
}

WignerGrid wigner_two_mode(const GridWavefunction& psi,
                           const PhaseSpaceGrid& grid, Exec exec) {
    const auto rows1 = aligned_indices(psi.axes[0], grid.q[0]);
    const auto rows2 = aligned_indices(psi.axes[1], grid.q[1]);
    auto terms = schmidt_decompose(psi);
    const int rank = (int)terms.size();
    const int n1 = grid.q[0].points, np1 = grid.p[0].points;
    const int n2 = grid.q[1].points, np2 = grid.p[1].points;

    std::vector<Eigen::MatrixXcd> w1(rank * rank), w2(rank * rank);
    for (int r = 0; r < rank; ++r)
        for (int s = 0; s <= r; ++s) {
            w1[r * rank + s] = cross_wigner(psi.axes[0], terms[r].left,
                                            terms[s].left, grid.p[0], exec);
            w2[r * rank + s] = cross_wigner(psi.axes[1], terms[r].right,
                                            terms[s].right, grid.p[1], exec);
        }

    WignerGrid out;
    out.grid = grid;
    out.samples.assign((std::size_t)n1 * np1 * n2 * np2, 0.0);
    double resid = 0.0;
    std::vector<double> resids(n1, 0.0);
    parallel_for(n1, exec, [&](std::int64_t ii) {
        const int i = (int)ii;
        const int ri = rows1[i];
        for (int j = 0; j < np1; ++j) {
            std::size_t base1 = ((std::size_t)i * np1 + j) * n2 * np2;
            for (int k = 0; k < n2; ++k) {
                const int rk = rows2[k];
                for (int l = 0; l < np2; ++l) {
                    cdouble acc = 0.0;
                    for (int r = 0; r < rank; ++r) {
                        acc += terms[r].weight * terms[r].weight *
                               w1[r * rank + r](ri, j) *
                               w2[r * rank + r](rk, l);
                        for (int s = 0; s < r; ++s)
                            acc += 2.0 * terms[r].weight * terms[s].weight *
                                   (w1[r * rank + s](ri, j) *
                                    w2[r * rank + s](rk, l))
                                       .real();
                    }
                    out.samples[base1 + (std::size_t)k * np2 + l] = acc.real();
                    resids[i] = std::max(resids[i], std::abs(acc.imag()));
                }
            }
        }
    });
    for (double r : resids) resid = std::max(resid, r);
    out.imag_residual = resid;
    return out;
}

} // namespace

WignerGrid wigner_from_wavefunction(const GridWavefunction& psi,
                                    const PhaseSpaceGrid& grid, Exec exec) {
    if (psi.modes != grid.modes())
        throw ArgumentError("wigner_from_wavefunction: mode count mismatch");
    if (psi.modes == 1) return wigner_one_mode(psi, grid, exec);
    if (psi.modes == 2) return wigner_two_mode(psi, grid, exec);
    throw ArgumentError("wigner_from_wavefunction: at most two modes");
}

WeylSymbolGrid weyl_symbol(const GridOperator& op, const Grid1D& q,
                           const Grid1D& p, Exec exec) {
    const Grid1D& ax = op.axis;
    const int n = ax.points;
    const double h = ax.spacing();

    WeylSymbolGrid out;
    out.q = q;
    out.p = p;
    out.samples.resize(q.points, p.points);

    parallel_for(q.points, exec, [&](std::int64_t iq) {
        double qv = q.node((int)iq);
        double s = (qv - ax.min) / (0.5 * h);
        int k = (int)std::llround(s);
        bool aligned = std::abs(s - k) < 1e-9 && k >= 0 && k <= 2 * (n - 1);
        for (int ip = 0; ip < p.points; ++ip) {
            double pv = p.node(ip);
            cdouble acc = 0.0;
            if (aligned) {
                // u nodes chosen so q +- u/2 are exact grid nodes
                int ilo = std::max(0, k - (n - 1));
                int ihi = std::min(n - 1, k);
                for (int i = ilo; i <= ihi; ++i) {
                    double w = (i == ilo || i == ihi) ? h : 2.0 * h;
                    double u = (2 * i - k) * h;
                    acc += w * op.kernel(i, k - i) *
                           std::exp(cdouble(0.0, -pv * u));
                }
            } else {
                // bilinear fallback on a uniform u grid; the kernel is
                // column-major so the interpolation arguments are swapped
                double umax = 2.0 * std::min(ax.max - qv, qv - ax.min);
                if (umax > 0) {
                    int nu = 2 * n + 1;
                    Grid1D ug(-umax, umax, nu);
                    std::span<const cdouble> flat(op.kernel.data(),
                                                  (std::size_t)n * n);
                    for (int i = 0; i < nu; ++i) {
                        double u = ug.node(i);
                        cdouble v = interp_bilinear(ax, ax, flat,
                                                    qv - 0.5 * u,
                                                    qv + 0.5 * u);
                        acc += trapezoid_weight(ug, i) * v *
                               std::exp(cdouble(0.0, -pv * u));
                    }
                }
            }
            out.samples((int)iq, ip) = acc;
        }
    });
    return out;
}

GridOperator operator_from_weyl(const WeylSymbolGrid& w, const Grid1D& axis,
                                Exec exec) {
    const int n = axis.points;
    const Grid1D& gp = w.p;
    GridOperator out;
    out.axis = axis;
    out.kernel.resize(n, n);

    // midpoint rows: (x_i + x_j)/2 takes 2n-1 distinct values
    const double h = axis.spacing();
    Eigen::MatrixXcd rows(2 * n - 1, gp.points);
    for (int m = 0; m < 2 * n - 1; ++m) {
        double qm = axis.min + 0.5 * h * m;
        double s = (qm - w.q.min) / w.q.spacing();
        int k = (int)std::llround(s);
        bool aligned =
            std::abs(s - k) < 1e-9 && k >= 0 && k < w.q.points;
        for (int ip = 0; ip < gp.points; ++ip) {
            if (w.constant_tag) {
                rows(m, ip) = w.samples(0, 0);
            } else if (aligned) {
                rows(m, ip) = w.samples(k, ip);
            } else {
                // cubic interpolation down the q direction
                Eigen::VectorXcd col = w.samples.col(ip);
                rows(m, ip) = interp_cubic(
                    w.q, std::span<const cdouble>(col.data(), col.size()), qm);
            }
        }
    }

    parallel_for(n, exec, [&](std::int64_t ii) {
        const int i = (int)ii;
        for (int j = 0; j < n; ++j) {
            double d = axis.node(i) - axis.node(j);
            cdouble acc = 0.0;
            for (int ip = 0; ip < gp.points; ++ip)
                acc += trapezoid_weight(gp, ip) * rows(i + j, ip) *
                       std::exp(cdouble(0.0, gp.node(ip) * d));
            out.kernel(i, j) = acc / kTwoPi;
        }
    });
    return out;
}

double weyl_roundtrip_residual(const GridOperator& op, const Grid1D& q,
                               const Grid1D& p) {
    WeylSymbolGrid w = weyl_symbol(op, q, p);
    GridOperator back = operator_from_weyl(w, op.axis);
    double scale = op.kernel.cwiseAbs().maxCoeff();
    return (back.kernel - op.kernel).cwiseAbs().maxCoeff() /
           (scale > 0 ? scale : 1.0);
}

namespace {

void check_edges(const WeylSymbolGrid& wa, const WeylSymbolGrid& wb,
                 double edge_tol) {
    for (const WeylSymbolGrid* w : {&wa, &wb}) {
        if (!w->constant_tag && w->edge_max_abs() > edge_tol)
            throw AccuracyError(
                "groenewold_star: symbol does not decay at the grid edge; "
                "the oscillatory integral would not converge");
    }
}

// Fourier transform of wb on the difference lattice:
//   bhat(e, d) = int wb(q, p) e^{-i (a_e q + b_d p)} dq dp
// with a_e = 2 hp e, b_d = -2 hq d.
Eigen::MatrixXcd difference_transform(const WeylSymbolGrid& wb, Exec exec) {
    const Grid1D& gq = wb.q;
    const Grid1D& gp = wb.p;
    const int nq = gq.points, np = gp.points;
    const double hq = gq.spacing(), hp = gp.spacing();
    Eigen::MatrixXcd stage1(nq, 2 * nq - 1); // q row, b_d column
    parallel_for(nq, exec, [&](std::int64_t iq) {
        for (int d = -(nq - 1); d <= nq - 1; ++d) {
            double b = -2.0 * hq * d;
            cdouble acc = 0.0;
            for (int ip = 0; ip < np; ++ip)
                acc += trapezoid_weight(gp, ip) * wb.samples((int)iq, ip) *
                       std::exp(cdouble(0.0, -b * gp.node(ip)));
            stage1((int)iq, d + nq - 1) = acc;
        }
    });
    Eigen::MatrixXcd bhat(2 * np - 1, 2 * nq - 1);
    parallel_for(2 * np - 1, exec, [&](std::int64_t ee) {
        int e = (int)ee - (np - 1);
        double a = 2.0 * hp * e;
        for (int d = 0; d < 2 * nq - 1; ++d) {
            cdouble acc = 0.0;
            for (int iq = 0; iq < nq; ++iq)
                acc += trapezoid_weight(gq, iq) * stage1(iq, d) *
                       std::exp(cdouble(0.0, -a * gq.node(iq)));
            bhat((int)ee, d) = acc;
        }
    });
    return bhat;
}

} // namespace

WeylSymbolGrid groenewold_star(const WeylSymbolGrid& wa,
                               const WeylSymbolGrid& wb, double edge_tol,
                               Exec exec) {
    if (!(wa.q == wb.q) || !(wa.p == wb.p))
        throw ArgumentError("groenewold_star: symbols on different grids");
    const Grid1D& gq = wa.q;
    const Grid1D& gp = wa.p;
    const int nq = gq.points, np = gp.points;

    // constants are central in the star algebra; the flagged analytic
    // representation keeps them exact
    if (wa.constant_tag || wb.constant_tag) {
        const WeylSymbolGrid& other = wa.constant_tag ? wb : wa;
        cdouble c = (wa.constant_tag ? wa : wb).samples(0, 0);
        WeylSymbolGrid out = other;
        out.samples *= c;
        out.constant_tag = wa.constant_tag && wb.constant_tag;
        return out;
    }

    check_edges(wa, wb, edge_tol);
    Eigen::MatrixXcd bhat = difference_transform(wb, exec);

    // phase split: e^{2i(q3 p1 - q1 p3)} = T(q3, p1) * S(q1, p3)
    Eigen::MatrixXcd T(nq, np), S(nq, np);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < np; ++j) {
            T(i, j) = std::exp(cdouble(0.0, 2.0 * gq.node(i) * gp.node(j)));
            S(i, j) = std::exp(cdouble(0.0, -2.0 * gq.node(i) * gp.node(j)));
        }

    // weighted wa, skipping negligible nodes
    Eigen::MatrixXcd awt(nq, np);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < np; ++j)
            awt(i, j) = trapezoid_weight(gq, i) * trapezoid_weight(gp, j) *
                        wa.samples(i, j);
    const double skip = 1e-15 * std::max(1.0, wa.max_abs()) * gq.spacing() *
                        gp.spacing();

    WeylSymbolGrid out;
    out.q = gq;
    out.p = gp;
    out.samples.resize(nq, np);
    const double pref = 1.0 / (kPi * kPi);

    parallel_for(nq, exec, [&](std::int64_t q3) {
        const int iq3 = (int)q3;
        for (int ip3 = 0; ip3 < np; ++ip3) {
            cdouble acc = 0.0;
            for (int iq1 = 0; iq1 < nq; ++iq1) {
                const cdouble s = S(iq1, ip3);
                for (int ip1 = 0; ip1 < np; ++ip1) {
                    const cdouble a = awt(iq1, ip1);
                    if (std::abs(a.real()) + std::abs(a.imag()) < skip)
                        continue;
                    acc += a * T(iq3, ip1) * s *
                           bhat(ip1 - ip3 + np - 1, iq1 - iq3 + nq - 1);
                }
            }
            out.samples(iq3, ip3) = pref * acc;
        }
    });
    return out;
}

cdouble groenewold_star_at(const WeylSymbolGrid& wa, const WeylSymbolGrid& wb,
                           double q3, double p3, double edge_tol, Exec exec) {
    if (!(wa.q == wb.q) || !(wa.p == wb.p))
        throw ArgumentError("groenewold_star_at: symbols on different grids");
    const Grid1D& gq = wa.q;
    const Grid1D& gp = wa.p;
    const int nq = gq.points, np = gp.points;
    check_edges(wa, wb, edge_tol);

    double uq = (q3 - gq.min) / gq.spacing();
    double up = (p3 - gp.min) / gp.spacing();
    const int iq3 = (int)std::llround(uq);
    const int ip3 = (int)std::llround(up);
    if (std::abs(uq - iq3) > 1e-9 || std::abs(up - ip3) > 1e-9)
        throw ArgumentError(
            "groenewold_star_at: evaluation point must be a grid node");

    Eigen::MatrixXcd bhat = difference_transform(wb, exec);
    std::vector<cdouble> rows(nq, 0.0);
    parallel_for(nq, exec, [&](std::int64_t q1) {
        const int iq1 = (int)q1;
        const double qv = gq.node(iq1);
        cdouble acc = 0.0;
        for (int ip1 = 0; ip1 < np; ++ip1) {
            double pv = gp.node(ip1);
            acc += trapezoid_weight(gq, iq1) * trapezoid_weight(gp, ip1) *
                   wa.samples(iq1, ip1) *
                   std::exp(cdouble(0.0, 2.0 * (q3 * pv - qv * p3))) *
                   bhat(ip1 - ip3 + np - 1, iq1 - iq3 + nq - 1);
        }
        rows[iq1] = acc;
    });
    cdouble total = 0.0;
    for (const cdouble& r : rows) total += r;
    return total / (kPi * kPi);
}

} // namespace tomokit
