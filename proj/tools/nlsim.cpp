#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "nlsb/config.hpp"
#include "nlsb/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Bubble and spectral solvers for the cubic Schrodinger equation with a "
                 "harmonic trap"};

    std::string method;
    int testcase = 1;
    std::string configPath;
    double dt = 0.0, tFinal = 0.0, mu = 0.0, lambda = 0.0, halfwidth = 0.0, svdRtol = 0.0;
    int nx = 0, ny = 0, stride = 1;
    std::string out;

    app.add_option("--method", method, "bubbles, spectral, or both");
    app.add_option("--testcase", testcase, "preset initial data")->check(CLI::Range(1, 3));
    app.add_option("--config", configPath, "JSON run configuration file");
    app.add_option("--dt", dt, "timestep");
    app.add_option("--t-final", tFinal, "final time");
    app.add_option("--mu", mu, "linear coefficient");
    app.add_option("--lambda", lambda, "cubic coefficient");
    app.add_option("--nx", nx, "grid points along x");
    app.add_option("--ny", ny, "grid points along y");
    app.add_option("--halfwidth", halfwidth, "half width of the grid box");
    app.add_option("--svd-rtol", svdRtol, "relative singular value cutoff");
    app.add_option("--out", out, "output directory");
    app.add_option("--stride", stride, "observable sampling stride");

    CLI11_PARSE(app, argc, argv);

    try {
        nlsb::RunConfig cfg;
        if (!configPath.empty()) cfg = nlsb::parseRunConfigFile(configPath);
        if (app.count("--method")) cfg.method = method;
        if (app.count("--testcase")) {
            cfg.testcase = testcase;
            cfg.bubbles.reset();
        }
        if (app.count("--dt")) cfg.dt = dt;
        if (app.count("--t-final")) cfg.tFinal = tFinal;
        if (app.count("--mu")) cfg.mu = mu;
        if (app.count("--lambda")) cfg.lambda = lambda;
        if (app.count("--nx")) cfg.nx = nx;
        if (app.count("--ny")) cfg.ny = ny;
        if (app.count("--halfwidth")) cfg.halfwidth = halfwidth;
        if (app.count("--svd-rtol")) cfg.svdRtol = svdRtol;
        if (app.count("--out")) cfg.outputPath = out;
        if (app.count("--stride")) cfg.observableStride = stride;
        nlsb::runSimulation(cfg);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
