#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <utility>

#include "nlsb/action_angle.hpp"
#include "nlsb/bubble.hpp"
#include "nlsb/config.hpp"
#include "nlsb/dfmp.hpp"
#include "nlsb/grid.hpp"
#include "nlsb/observables.hpp"
#include "nlsb/spectral.hpp"
#include "nlsb/testcases.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// One Strang step of the bubble solver: exact linear half steps around one RK4
// step of the projected cubic flow.  Without the cubic term the linear flow is
// exact for any step size, so the full step collapses to a single propagation.
inline BubbleEnsemble strangStepBubbles(const BubbleEnsemble& e, double dt, const RunConfig& cfg,
                                        SolveDiagnostics* diag = nullptr) {
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("strangStepBubbles: dt must be positive");
    if (cfg.lambda == 0.0) {
        if (diag) *diag = SolveDiagnostics{};
        return propagateEnsembleLinear(e, cfg.mu * dt);
    }
    if (cfg.mu == 0.0) return stepNonlinear(e, dt, cfg.lambda, cfg.svdRtol, diag);
    BubbleEnsemble cur = propagateEnsembleLinear(e, 0.5 * cfg.mu * dt);
    cur = stepNonlinear(cur, dt, cfg.lambda, cfg.svdRtol, diag);
    return propagateEnsembleLinear(cur, 0.5 * cfg.mu * dt);
}

namespace detail {

inline void appendCsvField(std::string& row, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!row.empty()) row.push_back(',');
    row += buf;
}

inline double reportedDrift(double v, double v0) {
    const double den = std::abs(v0);
    const double raw = den > 0.0 ? std::abs(v - v0) / den : std::abs(v - v0);
    return std::max(raw, 1e-16);
}

class ObservableWriter {
  public:
    explicit ObservableWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) fail("runSimulation: cannot open " + path.string());
        out_ << "t,mass,energy,momentum,P1,P2,"
                "drift_mass,drift_energy,drift_momentum,drift_P1,drift_P2\n";
    }

    void append(const ObservableRecord& rec) {
        if (!haveFirst_) {
            first_ = rec;
            haveFirst_ = true;
        }
        std::string row;
        appendCsvField(row, rec.t);
        appendCsvField(row, rec.mass);
        appendCsvField(row, rec.energy);
        appendCsvField(row, rec.momentum);
        appendCsvField(row, rec.nonRadial[0]);
        appendCsvField(row, rec.nonRadial[1]);
        appendCsvField(row, reportedDrift(rec.mass, first_.mass));
        appendCsvField(row, reportedDrift(rec.energy, first_.energy));
        appendCsvField(row, reportedDrift(rec.momentum, first_.momentum));
        appendCsvField(row, reportedDrift(rec.nonRadial[0], first_.nonRadial[0]));
        appendCsvField(row, reportedDrift(rec.nonRadial[1], first_.nonRadial[1]));
        out_ << row << '\n';
    }

  private:
    std::ofstream out_;
    ObservableRecord first_;
    bool haveFirst_ = false;
};

inline ObservableRecord observeBubbles(const BubbleEnsemble& e, double t,
                                       const ObservableParams& p) {
    ObservableRecord rec;
    rec.t = t;
    rec.mass = bubbleMass(e);
    rec.energy = bubbleEnergy(e, p);
    rec.momentum = bubbleMomentum(e, p);
    rec.nonRadial = bubbleNonRadial(e, p);
    return rec;
}

inline void writeGridCsv(const GridField& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail("runSimulation: cannot open " + path.string());
    out << "x,y,re_psi,im_psi\n";
    forEachPoint(f, [&](std::size_t idx, const vecd& x) {
        std::string row;
        appendCsvField(row, x[0]);
        appendCsvField(row, x[1]);
        appendCsvField(row, f.values[idx].real());
        appendCsvField(row, f.values[idx].imag());
        out << row << '\n';
    });
}

}  // namespace detail

// Runs the configured simulation and writes its artifacts under
// cfg.outputPath: observables_bubbles.csv / observables_spectral.csv (one row
// at t = 0 and then every stride-th step), diagnostics.csv (one row per
// nonlinear bubble step), final_state_grid.csv, and final_state_bubbles.json
// (readable as an input config).  Single-threaded with fixed-order sums, so
// identical configs produce bitwise-identical files.
inline void runSimulation(const RunConfig& cfg) {
    validateRunConfig(cfg);
    if (cfg.d != 2) fail("runSimulation: only d = 2 runs are supported");

    const bool useBubbles = cfg.method == "bubbles" || cfg.method == "both";
    const bool useSpectral = cfg.method == "spectral" || cfg.method == "both";

    BubbleEnsemble initial;
    std::function<complexd(const vecd&)> exactField;
    if (cfg.bubbles) {
        initial = *cfg.bubbles;
    } else {
        TestCase tc = loadTestCase(cfg.testcase);
        initial = std::move(tc.ensemble);
        exactField = std::move(tc.exactField);
    }

    const long nSteps = static_cast<long>(std::floor(cfg.tFinal / cfg.dt + 1e-9));
    const std::filesystem::path outDir{cfg.outputPath};
    std::filesystem::create_directories(outDir);
    const ObservableParams params{cfg.mu, cfg.lambda};

    GridField finalGrid;
    bool haveGrid = false;

    if (useBubbles) {
        detail::ObservableWriter obs(outDir / "observables_bubbles.csv");
        std::ofstream diag(outDir / "diagnostics.csv");
        if (!diag) fail("runSimulation: cannot open diagnostics.csv");
        diag << "t,gram_condition,effective_rank\n";

        BubbleEnsemble state = initial;
        obs.append(detail::observeBubbles(state, 0.0, params));
        for (long k = 1; k <= nSteps; ++k) {
            SolveDiagnostics sd;
            state = strangStepBubbles(state, cfg.dt, cfg, &sd);
            const double t = k * cfg.dt;
            if (cfg.lambda != 0.0) {
                std::string row;
                detail::appendCsvField(row, t);
                detail::appendCsvField(row, sd.condition);
                detail::appendCsvField(row, static_cast<double>(sd.effectiveRank));
                diag << row << '\n';
            }
            if (k % cfg.observableStride == 0)
                obs.append(detail::observeBubbles(state, t, params));
        }

        RunConfig dump = cfg;
        dump.bubbles = state;
        dump.testcase = 0;
        std::ofstream js(outDir / "final_state_bubbles.json");
        if (!js) fail("runSimulation: cannot open final_state_bubbles.json");
        js << serializeRunConfig(dump);

        if (!useSpectral) {
            finalGrid = renderEnsemble(state, {cfg.nx, cfg.ny}, cfg.halfwidth);
            haveGrid = true;
        }
    }

    if (useSpectral) {
        GridField f = exactField ? sampleGrid({cfg.nx, cfg.ny}, cfg.halfwidth,
                                              [&](const vecd& x) { return exactField(x); })
                                 : renderEnsemble(initial, {cfg.nx, cfg.ny}, cfg.halfwidth);
        if (spectralTailFraction(f) > 1e-10)
            std::cerr << "warning: initial data is not spectrally resolved on the requested "
                         "grid; increase nx/ny or shrink halfwidth\n";

        detail::ObservableWriter obs(outDir / "observables_spectral.csv");
        ObservableRecord rec = gridObservables(f, params);
        rec.t = 0.0;
        obs.append(rec);
        for (long k = 1; k <= nSteps; ++k) {
            f = strangStepSpectral(std::move(f), cfg.dt, cfg.mu, cfg.lambda);
            if (k % cfg.observableStride == 0) {
                rec = gridObservables(f, params);
                rec.t = k * cfg.dt;
                obs.append(rec);
            }
        }
        finalGrid = std::move(f);
        haveGrid = true;
    }

    if (haveGrid) detail::writeGridCsv(finalGrid, outDir / "final_state_grid.csv");
}

}  // namespace nlsb
