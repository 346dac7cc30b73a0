#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/states.hpp"
#include "tomokit/weyl.hpp"

// Symplectic, center-of-mass, and cluster tomographic transforms, their
// inter-conversions, and subsystem reductions.
//
// The center-of-mass tomogram of an N-mode state is the distribution of the
// single scalar X = mu.q + nu.p; the symplectic tomogram keeps one X_j per
// mode; the cluster tomogram keeps one center-of-mass variable per subsystem
// of a partition.

namespace tomokit {

struct TomographicQuery {
    double X = 0.0;
    std::vector<double> mu;
    std::vector<double> nu;

    TomographicQuery() = default;
    TomographicQuery(double x, std::vector<double> m, std::vector<double> n);
    int modes() const { return (int)mu.size(); }
    double sigma() const; // |mu|^2 + |nu|^2, must be > 0
};

struct SymplecticQuery {
    std::vector<double> X;
    std::vector<double> mu;
    std::vector<double> nu;

    SymplecticQuery() = default;
    SymplecticQuery(std::vector<double> x, std::vector<double> m,
                    std::vector<double> n);
    int modes() const { return (int)mu.size(); }
};

struct ClusterPartition {
    std::vector<int> sizes;

    explicit ClusterPartition(std::vector<int> s);
    int subsystems() const { return (int)sizes.size(); }
    int total_modes() const;
    int offset(int k) const; // first mode index of subsystem k
};

struct ClusterQuery {
    std::vector<double> X; // one entry per subsystem
    std::vector<double> mu;
    std::vector<double> nu;
};

using CmTomogram = std::function<double(const TomographicQuery&)>;
using SymplecticTomogram = std::function<double(const SymplecticQuery&)>;

// ---------------------------------------------------------------------------
// Center-of-mass tomograms

// Radon transform of a dense single- or two-mode Wigner grid,
//   w(X, mu, nu) = (2 pi)^{-N} int W delta(X - mu.q - nu.p) dq dp.
double cm_tomogram_from_wigner(const WignerGrid& w, const TomographicQuery& q);

// Two-mode Radon oracle. Built once from a discretized wavefunction, it
// factors the state through a Schmidt decomposition, takes numerical
// cross-Wigner transforms per mode, and evaluates hyperplane integrals as a
// 1-D convolution of per-mode line-integral profiles.
class TwoModeRadonOracle {
public:
    explicit TwoModeRadonOracle(const GridWavefunction& psi, int p_points = 0,
                                Exec exec = Exec::parallel);

    double operator()(const TomographicQuery& q) const;
    std::vector<double> batch(const std::vector<TomographicQuery>& qs,
                              Exec exec = Exec::parallel) const;
    CmTomogram as_callable() const;

private:
    struct Pair {
        double coeff;   // w_r w_s, doubled for off-diagonal pairs
        bool diagonal;
        std::vector<cdouble> w1, w2; // row-major cross-Wigner tables
    };
    Grid1D q1_, p1_, q2_, p2_;
    std::vector<Pair> pairs_;

    void mode_profile(int mode, const std::vector<cdouble>& table, double mu,
                      double nu, const Grid1D& sgrid,
                      std::vector<cdouble>& out) const;
    cdouble mode_mass(int mode, const std::vector<cdouble>& table) const;
};

// Closed-form center-of-mass tomograms of coherent and cat states (any N).
double cm_tomogram_analytic(const CoherentState& s, const TomographicQuery& q);
double cm_tomogram_analytic(const CatState& s, const TomographicQuery& q);

// ---------------------------------------------------------------------------
// Symplectic tomograms

// Joint distribution of the per-mode quadratures X_j = mu_j q_j + nu_j p_j
// for a discretized pure state (1 or 2 modes), computed by per-mode
// fractional-Fourier (chirp) transforms of the wavefunction.
double symplectic_tomogram(const GridWavefunction& psi,
                           const SymplecticQuery& q);

// Same quantity on a full (X1, X2) grid for fixed (mu, nu); two modes only.
Eigen::MatrixXd symplectic_tomogram_batch(const GridWavefunction& psi,
                                          const std::vector<double>& mu,
                                          const std::vector<double>& nu,
                                          const Grid1D& x1, const Grid1D& x2,
                                          Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// Map conversions

// w_cm(X, mu, nu) = int w_s(Y, mu, nu) delta(X - e.Y) dY. The half-width of
// the Y integration window is `y_half`.
double cm_from_symplectic(const SymplecticTomogram& ws,
                          const TomographicQuery& q, double y_half = 20.0,
                          int y_points = 801);

// Regulated oscillatory k-integrals: each epsilon multiplies the integrand
// by exp(-eps k^2); the values are Richardson-extrapolated to eps -> 0.
struct KIntegralOptions {
    std::vector<double> epsilons = {1e-2, 1e-3, 1e-4};
    double k_half = 0.0;   // 0 = choose from the query
    int k_points = 0;      // 0 = choose from the query
    double z_half = 24.0;  // inner profile window
    int z_points = 481;
};

// w_s(X, mu, nu) = (2 pi)^{-N} int w_cm(Y, k o mu, k o nu) e^{i(Y - k.X)} dk dY
double symplectic_from_cm(const CmTomogram& wcm, const SymplecticQuery& q,
                          const KIntegralOptions& opts = {});

// ---------------------------------------------------------------------------
// Cluster tomograms

// One center-of-mass variable per subsystem; r = 1 is the center-of-mass
// map, r = N the symplectic map. Supported partitions for two modes:
// {2} and {1,1}.
double cluster_tomogram(const GridWavefunction& psi,
                        const ClusterPartition& part, const ClusterQuery& q);

// Center-of-mass tomogram of subsystem m from the composed-system tomogram,
//   w^(m)(X, mu_m, nu_m) =
//     (2 pi)^{-1} int w_cm(Y, k a_m, k b_m) e^{i(Y - k X)} dk dY,
// where a_m, b_m pad the subsystem vectors with zeros.
double subsystem_cm_tomogram(const CmTomogram& wcm, int subsystem,
                             const ClusterPartition& part,
                             const TomographicQuery& q,
                             const KIntegralOptions& opts = {});

// ---------------------------------------------------------------------------
// Helpers shared by the property suites

// int w(Y, k a, k b) e^{iY} dY, evaluated on nodes Y = kZ so the profile
// stays resolved for every k; k = 0 uses the homogeneity limit
// int w(Z, a, b) dZ. This is the building block of every k-integral route.
cdouble scaled_profile_transform(const CmTomogram& w,
                                 const std::vector<double>& a,
                                 const std::vector<double>& b, double k,
                                 const Grid1D& zgrid);

// int w(Y, mu, nu) e^{iY} dY with nodes Y = sqrt(sigma) Z, so the profile
// (width ~ sqrt(sigma/2), center ~ sqrt(sigma)) is resolved uniformly in
// sigma. The node count adapts to the e^{iY} oscillation.
cdouble fourier_profile(const CmTomogram& w, const std::vector<double>& mu,
                        const std::vector<double>& nu, double z_half = 25.0,
                        int base_points = 401);

// int w(X) dX over a window of half-width x_half.
double tomogram_normalization(const CmTomogram& w, const TomographicQuery& q,
                              double x_half = 30.0, int points = 1201);

// int X^n w(X) dX, n in {1, 2}.
double tomogram_moment(const CmTomogram& w, const TomographicQuery& q, int n,
                       double x_half = 30.0, int points = 1201);

} // namespace tomokit
