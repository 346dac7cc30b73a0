// Timing comparison of the serial reference kernels against the OpenMP
// paths. The outputs are bit-identical by construction (each output slot is
// computed independently), so the benchmark also asserts equality.

#include <chrono>
#include <cstdio>
#include <functional>

#include "tomokit/reconstruction.hpp"
#include "tomokit/states.hpp"
#include "tomokit/tomography.hpp"
#include "tomokit/weyl.hpp"

using namespace tomokit;

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

void report(const char* name, double serial, double parallel, bool equal) {
    std::printf("%-34s serial %8.3f s   parallel %8.3f s   speedup %5.2fx  %s\n",
                name, serial, parallel, serial / parallel,
                equal ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("tomokit serial vs OpenMP kernels (%d thread budget)\n\n",
                max_threads());

    CatState cat({1.0, cdouble(0.0, 0.8)}, +1);
    Grid1D ax(-8.0, 8.0, 161);

    GridWavefunction psi2 = discretize(cat, {ax, ax});

    {
        GridDensityMatrix rs, rp;
        double ts = time_of([&] { rs = reduce_to_mode(psi2, 0, Exec::serial); });
        double tp = time_of([&] { rp = reduce_to_mode(psi2, 0, Exec::parallel); });
        report("partial trace (161^2)", ts, tp, rs.samples == rp.samples);
    }

    GridWavefunction one = discretize(CatState({1.2}, +1), {ax});
    PhaseSpaceGrid ps = PhaseSpaceGrid::for_wavefunction(one, 161);
    {
        WignerGrid ws, wp;
        double ts = time_of(
            [&] { ws = wigner_from_wavefunction(one, ps, Exec::serial); });
        double tp = time_of(
            [&] { wp = wigner_from_wavefunction(one, ps, Exec::parallel); });
        report("Wigner transform (161x161)", ts, tp, ws.samples == wp.samples);
    }

    {
        WignerGrid w = wigner_from_wavefunction(one, ps);
        Grid1D g(-8.0, 8.0, 97);
        WeylSymbolGrid wa;
        wa.q = g;
        wa.p = g;
        wa.samples.resize(97, 97);
        for (int i = 0; i < 97; ++i)
            for (int j = 0; j < 97; ++j)
                wa.samples(i, j) =
                    w.value(g.node(i), g.node(j)); // damped symbol
        WeylSymbolGrid ss, sp;
        double ts = time_of(
            [&] { ss = groenewold_star(wa, wa, 1e-4, Exec::serial); });
        double tp = time_of(
            [&] { sp = groenewold_star(wa, wa, 1e-4, Exec::parallel); });
        report("Groenewold star (97^2 grid)", ts, tp,
               ss.samples == sp.samples);
    }

    {
        CoherentState coh({1.0});
        CmTomogram w = [&](const TomographicQuery& q) {
            return cm_tomogram_analytic(coh, q);
        };
        Grid1D axis(-8.0, 8.0, 96);
        ReconstructionOptions os, op;
        os.exec = Exec::serial;
        op.exec = Exec::parallel;
        GridDensityMatrix rs, rp;
        double ts = time_of(
            [&] { rs = density_from_cm_tomogram(w, axis, os); });
        double tp = time_of(
            [&] { rp = density_from_cm_tomogram(w, axis, op); });
        report("density reconstruction (96 axis)", ts, tp,
               rs.samples == rp.samples);
    }

    {
        CmTomogram w = [&](const TomographicQuery& q) {
            return cm_tomogram_analytic(cat, q);
        };
        PurityOptions os, op;
        os.exec = Exec::serial;
        op.exec = Exec::parallel;
        double vs = 0.0, vp = 0.0;
        double ts = time_of([&] { vs = purity_from_cm(w, 2, os); });
        double tp = time_of([&] { vp = purity_from_cm(w, 2, op); });
        report("subsystem purity functional", ts, tp, vs == vp);
    }

    {
        TwoModeRadonOracle oracle(psi2);
        std::vector<TomographicQuery> qs;
        for (int t = 0; t < 24; ++t)
            qs.emplace_back(0.1 * t - 1.2,
                            std::vector<double>{0.9, 0.3 + 0.01 * t},
                            std::vector<double>{-0.2, 0.7});
        std::vector<double> vs, vp;
        double ts = time_of([&] { vs = oracle.batch(qs, Exec::serial); });
        double tp = time_of([&] { vp = oracle.batch(qs, Exec::parallel); });
        report("Radon oracle batch (24 queries)", ts, tp, vs == vp);
    }
    return 0;
}
