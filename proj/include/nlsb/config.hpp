#pragma once

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// Full description of one run. testcase 1..3 selects a preset; 0 means the
// ensemble comes from the explicit `bubbles` list.
struct RunConfig {
    std::string method = "bubbles";
    int d = 2;
    double dt = 1e-3;
    double tFinal = 1.0;
    double mu = 1.0;
    double lambda = 1.0;
    int testcase = 1;
    int nx = 128;
    int ny = 129;
    double halfwidth = 15.0;
    double svdRtol = 1e-10;
    std::string outputPath = ".";
    int observableStride = 1;
    std::optional<BubbleEnsemble> bubbles;
};

inline void validateRunConfig(const RunConfig& cfg) {
    if (cfg.method != "bubbles" && cfg.method != "spectral" && cfg.method != "both")
        fail("config: method must be bubbles, spectral, or both");
    if (cfg.d < 1 || cfg.d > 2) fail("config: d must be 1 or 2");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail("config: dt must be positive");
    if (!(cfg.tFinal >= 0.0) || !std::isfinite(cfg.tFinal))
        fail("config: t_final must be nonnegative");
    if (!std::isfinite(cfg.mu) || !std::isfinite(cfg.lambda))
        fail("config: mu and lambda must be finite");
    if (cfg.testcase < 0 || cfg.testcase > 3) fail("config: testcase must be 1, 2, or 3");
    if (cfg.testcase == 0 && !cfg.bubbles) fail("config: custom testcase needs a bubbles section");
    if (cfg.nx < 8 || cfg.ny < 8) fail("config: nx and ny must be at least 8");
    if (!(cfg.halfwidth > 0.0) || !std::isfinite(cfg.halfwidth))
        fail("config: halfwidth must be positive");
    if (!(cfg.svdRtol > 0.0) || !std::isfinite(cfg.svdRtol))
        fail("config: svd_rtol must be positive");
    if (cfg.observableStride < 1) fail("config: stride must be at least 1");
    if (cfg.bubbles) {
        validateEnsemble(*cfg.bubbles);
        if (cfg.bubbles->d != cfg.d) fail("config: bubbles dimension does not match run.d");
    }
}

namespace detail {

using json = nlohmann::json;

inline double asNumber(const json& v, const std::string& where) {
    if (!v.is_number()) fail("config: field " + where + " must be a number");
    return v.get<double>();
}

inline int asInteger(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail("config: field " + where + " must be an integer");
    return v.get<int>();
}

inline std::string asText(const json& v, const std::string& where) {
    if (!v.is_string()) fail("config: field " + where + " must be a string");
    return v.get<std::string>();
}

inline vecd asVector(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail("config: field " + where + " must be a number array");
    vecd out;
    for (const auto& item : v) out.push_back(asNumber(item, where));
    return out;
}

inline Bubble parseBubble(const json& rec, int index) {
    const std::string where = "bubbles[" + std::to_string(index) + "]";
    if (!rec.is_object()) fail("config: " + where + " must be an object");
    for (const auto& [key, value] : rec.items()) {
        (void)value;
        if (key != "A" && key != "L" && key != "B" && key != "X" && key != "beta" &&
            key != "gamma" && key != "s" && key != "hermite")
            fail("config: unknown field " + where + "." + key);
    }
    for (const char* required : {"A", "L", "B", "X", "beta", "gamma"})
        if (!rec.contains(required))
            fail("config: " + where + " is missing field " + required);

    Bubble b;
    b.A = asNumber(rec.at("A"), where + ".A");
    b.L = asNumber(rec.at("L"), where + ".L");
    b.B = asNumber(rec.at("B"), where + ".B");
    b.X = asVector(rec.at("X"), where + ".X");
    b.beta = asVector(rec.at("beta"), where + ".beta");
    b.gamma = asNumber(rec.at("gamma"), where + ".gamma");
    if (rec.contains("s")) b.s = asNumber(rec.at("s"), where + ".s");
    const int d = b.dim();

    if (rec.contains("hermite")) {
        const auto& modes = rec.at("hermite");
        if (!modes.is_array()) fail("config: field " + where + ".hermite must be an array");
        for (const auto& entry : modes) {
            if (!entry.is_array() || static_cast<int>(entry.size()) != d + 2)
                fail("config: entries of " + where + ".hermite must be [n1..nd, re, im]");
            MultiIndex n;
            for (int i = 0; i < d; ++i) n.push_back(asInteger(entry.at(i), where + ".hermite"));
            const double re = asNumber(entry.at(d), where + ".hermite");
            const double im = asNumber(entry.at(d + 1), where + ".hermite");
            b.spectrum[n] = complexd{re, im};
        }
    } else {
        b.spectrum[zeroIndex(d)] = std::pow(M_PI, 0.25 * d);
    }
    validateBubble(b);
    return b;
}

}  // namespace detail

inline RunConfig parseRunConfig(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& err) {
        fail(std::string{"config: invalid JSON: "} + err.what());
    }
    if (!doc.is_object()) fail("config: top level must be an object");

    RunConfig cfg;
    bool dimensionSet = false;
    for (const auto& [section, value] : doc.items()) {
        if (section == "run") {
            if (!value.is_object()) fail("config: run section must be an object");
            for (const auto& [key, field] : value.items()) {
                if (key == "method")
                    cfg.method = detail::asText(field, "run.method");
                else if (key == "d") {
                    cfg.d = detail::asInteger(field, "run.d");
                    dimensionSet = true;
                } else if (key == "dt")
                    cfg.dt = detail::asNumber(field, "run.dt");
                else if (key == "t_final")
                    cfg.tFinal = detail::asNumber(field, "run.t_final");
                else if (key == "mu")
                    cfg.mu = detail::asNumber(field, "run.mu");
                else if (key == "lambda")
                    cfg.lambda = detail::asNumber(field, "run.lambda");
                else if (key == "testcase") {
                    if (field.is_string() && field.get<std::string>() == "custom")
                        cfg.testcase = 0;
                    else
                        cfg.testcase = detail::asInteger(field, "run.testcase");
                } else if (key == "nx")
                    cfg.nx = detail::asInteger(field, "run.nx");
                else if (key == "ny")
                    cfg.ny = detail::asInteger(field, "run.ny");
                else if (key == "halfwidth")
                    cfg.halfwidth = detail::asNumber(field, "run.halfwidth");
                else if (key == "svd_rtol")
                    cfg.svdRtol = detail::asNumber(field, "run.svd_rtol");
                else if (key == "out")
                    cfg.outputPath = detail::asText(field, "run.out");
                else if (key == "stride")
                    cfg.observableStride = detail::asInteger(field, "run.stride");
                else
                    fail("config: unknown field run." + key);
            }
        } else if (section == "bubbles") {
            if (!value.is_array() || value.empty())
                fail("config: bubbles section must be a nonempty array");
            BubbleEnsemble e;
            int index = 0;
            for (const auto& rec : value) e.bubbles.push_back(detail::parseBubble(rec, index++));
            e.d = e.bubbles.front().dim();
            cfg.bubbles = std::move(e);
        } else {
            fail("config: unknown section '" + section + "'");
        }
    }

    if (cfg.bubbles) {
        cfg.testcase = 0;
        if (!dimensionSet) cfg.d = cfg.bubbles->d;
    }
    validateRunConfig(cfg);
    return cfg;
}

inline RunConfig parseRunConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseRunConfig(buf.str());
}

inline std::string serializeRunConfig(const RunConfig& cfg) {
    using detail::json;
    json run{
        {"method", cfg.method},         {"d", cfg.d},
        {"dt", cfg.dt},                 {"t_final", cfg.tFinal},
        {"mu", cfg.mu},                 {"lambda", cfg.lambda},
        {"nx", cfg.nx},                 {"ny", cfg.ny},
        {"halfwidth", cfg.halfwidth},   {"svd_rtol", cfg.svdRtol},
        {"out", cfg.outputPath},        {"stride", cfg.observableStride},
    };
    if (cfg.testcase == 0)
        run["testcase"] = "custom";
    else
        run["testcase"] = cfg.testcase;

    json doc{{"run", run}};
    if (cfg.bubbles) {
        json list = json::array();
        for (const auto& b : cfg.bubbles->bubbles) {
            json rec{{"A", b.A},        {"L", b.L},     {"B", b.B},
                     {"X", b.X},        {"beta", b.beta}, {"gamma", b.gamma},
                     {"s", b.s}};
            const int d = b.dim();
            const bool presetGaussian =
                b.spectrum.size() == 1 && b.spectrum.begin()->first == zeroIndex(d) &&
                b.spectrum.begin()->second == complexd{std::pow(M_PI, 0.25 * d), 0.0};
            if (!presetGaussian) {
                json modes = json::array();
                for (const auto& [n, c] : b.spectrum) {
                    json entry = json::array();
                    for (int ni : n) entry.push_back(ni);
                    entry.push_back(c.real());
                    entry.push_back(c.imag());
                    modes.push_back(std::move(entry));
                }
                rec["hermite"] = std::move(modes);
            }
            list.push_back(std::move(rec));
        }
        doc["bubbles"] = std::move(list);
    }
    return doc.dump(2) + "\n";
}

}  // namespace nlsb
