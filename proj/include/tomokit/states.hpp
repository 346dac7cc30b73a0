#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/parallel.hpp"

// Analytic multimode coherent and Schroedinger-cat states, their
// discretization onto position grids, and the partial-trace oracle.
// Units: hbar = 1, mass- and frequency-scaled quadratures throughout, so
// the vacuum has <q^2> = <p^2> = 1/2 and psi_0(x) = pi^{-1/4} e^{-x^2/2}.

namespace tomokit {

struct CoherentState {
    std::vector<cdouble> alphas;

    explicit CoherentState(std::vector<cdouble> a);
    int modes() const { return (int)alphas.size(); }
    double max_abs_alpha() const;
};

struct CatState {
    std::vector<cdouble> alphas;
    int parity = +1; // +1 even, -1 odd

    CatState(std::vector<cdouble> a, int sign);
    int modes() const { return (int)alphas.size(); }
    double max_abs_alpha() const;
};

// N_pm with N_pm^{-2} = 2 pm 2 exp(-2 sum |alpha_j|^2); the odd cat with all
// alphas zero is rejected.
double cat_normalization(std::span<const cdouble> alphas, int parity);

// psi_alpha(x) = pi^{-N/4} exp(-x^2/2 + sqrt2 alpha.x - |alpha|^2/2 - alpha^2/2)
cdouble coherent_wavefunction(const CoherentState& s, std::span<const double> x);

// N_pm (psi_alpha(x) pm psi_{-alpha}(x))
cdouble cat_wavefunction(const CatState& s, std::span<const double> x);

// Discretized pure state on 1 or 2 position grids. For two modes,
// samples(i, j) = psi(axes[0].node(i), axes[1].node(j)); one mode uses
// column 0 only.
struct GridWavefunction {
    int modes = 1;
    std::vector<Grid1D> axes;
    Eigen::MatrixXcd samples;

    double norm() const; // L2 norm via trapezoid quadrature
    // <q_j> and <p_j> by quadrature; momentum uses a central difference.
    double mean_position(int mode) const;
    double mean_momentum(int mode) const;
};

// Single-mode operator kernel rho(x, x') sampled on a grid.
struct GridDensityMatrix {
    Grid1D axis;
    Eigen::MatrixXcd samples;

    double trace() const;
    double purity() const; // Tr rho^2
    double herm_residual() const; // max |rho - rho^dagger|
    double min_eigenvalue() const; // smallest eigenvalue of the discretized operator
};

// Default axis for a state with displacement up to max|alpha|:
// symmetric extent sqrt2*max|alpha| + 6.
Grid1D default_axis(double max_abs_alpha, int points = 128);

GridWavefunction discretize(const CoherentState& s, std::vector<Grid1D> axes,
                            double tol_norm = 1e-6, Exec exec = Exec::parallel);
GridWavefunction discretize(const CatState& s, std::vector<Grid1D> axes,
                            double tol_norm = 1e-6, Exec exec = Exec::parallel);

// rho_keep(x, x') = int psi(..x.., y) conj(psi(..x'.., y)) dy, tracing out
// the other mode of a two-mode state.
GridDensityMatrix reduce_to_mode(const GridWavefunction& psi, int keep,
                                 Exec exec = Exec::parallel);

// <psi| rho |psi> for a state sampled on the same axis.
double fidelity(const GridDensityMatrix& rho, std::span<const cdouble> psi);

// One Schmidt term of a two-mode pure state.
struct SchmidtTerm {
    double weight; // singular value, continuum-normalized
    Eigen::VectorXcd left;
    Eigen::VectorXcd right;
};

// psi(x1,x2) = sum_r weight_r left_r(x1) right_r(x2), truncated at
// weight > cutoff. Factors are L2-normalized on their axes.
std::vector<SchmidtTerm> schmidt_decompose(const GridWavefunction& psi,
                                           double cutoff = 1e-9);

} // namespace tomokit
