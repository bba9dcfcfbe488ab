// Copyright 2026 The zlgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// zlgt: command-line driver.  Every subcommand writes CSVs plus manifest.json into --out
// and exits 0 iff all of its assertions pass.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zlgt/harness.hpp"
#include "zlgt/optical.hpp"
#include "zlgt/oracle.hpp"

namespace {

using namespace zlgt;
using nlohmann::json;

struct Common {
    std::string config;
    std::string out = "out";
    long long seed = -1;
    int shots = 1000;
};

SimulationConfig resolve(const Common &o) {
    SimulationConfig c = o.config.empty() ? SimulationConfig{} : load_config(o.config);
    if (o.seed >= 0) {
        c.seed = static_cast<std::uint64_t>(o.seed);
    }
    validate_config(c);
    std::filesystem::create_directories(o.out);
    return c;
}

std::string path(const Common &o, const char *name) { return (std::filesystem::path(o.out) / name).string(); }

std::string fmt(double x) { return format_number(x); }

int cmd_verify(const Common &o, const std::string &command) {
    SimulationConfig c = resolve(o);
    std::vector<CheckResult> res = run_verification_suite(c);
    std::vector<std::vector<std::string>> rows;
    bool ok = true;
    json summary = json::array();
    for (const auto &r : res) {
        ok = ok && r.passed;
        std::printf("%s  %s  measured=%s threshold=%s%s%s\n", r.passed ? "PASS" : "FAIL", r.property.c_str(),
                    fmt(r.measured).c_str(), fmt(r.threshold).c_str(), r.detail.empty() ? "" : "  ",
                    r.detail.c_str());
        rows.push_back({"\"" + r.property + "\"", r.passed ? "1" : "0", fmt(r.measured), fmt(r.threshold),
                        "\"" + r.detail + "\""});
        summary.push_back({{"property", r.property}, {"passed", r.passed}, {"measured", r.measured}});
    }
    write_csv(path(o, "verify.csv"), {"property", "passed", "measured", "threshold", "detail"}, rows);
    write_manifest(o.out, c, command, json{{"all_passed", ok}, {"checks", summary}}.dump());
    return ok ? 0 : 1;
}

int cmd_quench(const Common &o, const std::string &command) {
    SimulationConfig c = resolve(o);
    std::vector<QuenchRecord> recs = run_quench(c);
    std::vector<std::vector<std::string>> q;
    std::vector<std::vector<std::string>> gauss;
    std::vector<std::vector<std::string>> flux;
    double worst = 0.0;
    double ndrift = 0.0;
    for (const auto &r : recs) {
        const double dev = max_gauss_deviation(r);
        worst = std::max(worst, dev);
        ndrift = std::max(ndrift, std::abs(r.fermion_number - recs.front().fermion_number));
        q.push_back({std::to_string(r.step), fmt(r.t), fmt(r.fermion_number), fmt(r.fidelity),
                     fmt(r.ancilla_overlap), fmt(dev)});
        for (std::size_t v = 0; v < r.gauss.size(); ++v) {
            gauss.push_back({std::to_string(r.step), fmt(r.t), std::to_string(v), fmt(r.gauss[v].real()),
                             fmt(r.gauss[v].imag())});
        }
        for (std::size_t l = 0; l < r.flux.size(); ++l) {
            for (std::size_t m = 0; m < r.flux[l].size(); ++m) {
                flux.push_back({std::to_string(r.step), fmt(r.t), std::to_string(l), std::to_string(m),
                                fmt(r.flux[l][m])});
            }
        }
    }
    write_csv(path(o, "quench.csv"), {"step", "t", "fermion_number", "fidelity", "ancilla_overlap", "max_gauss_dev"},
              q);
    write_csv(path(o, "gauss.csv"), {"step", "t", "vertex", "re", "im"}, gauss);
    write_csv(path(o, "flux.csv"), {"step", "t", "link", "m", "probability"}, flux);

    RegisterLayout L = layout_for(c);
    StateVector final_state =
        trotter_evolve(L, couplings_for(c), c.T, c.n_steps, options_for(c), build_global_singlet(L));
    std::vector<Shot> shots = measure_configuration(final_state, c.seed, o.shots);
    std::vector<std::string> header = {"shot"};
    const std::size_t nl = L.geometry().links().size();
    const std::size_t nv = L.geometry().vertices().size();
    for (std::size_t l = 0; l < nl; ++l) {
        header.push_back("link" + std::to_string(l));
    }
    for (std::size_t v = 0; v < nv; ++v) {
        header.push_back("n" + std::to_string(v));
    }
    std::vector<std::vector<std::string>> srows;
    for (std::size_t s = 0; s < shots.size(); ++s) {
        std::vector<std::string> row = {std::to_string(s)};
        for (int x : shots[s].links) {
            row.push_back(std::to_string(x));
        }
        for (int x : shots[s].occupations) {
            row.push_back(std::to_string(x));
        }
        srows.push_back(row);
    }
    write_csv(path(o, "shots.csv"), header, srows);

    const bool ok = worst < 1e-8 && ndrift < 1e-10;
    std::printf("%s  max Gauss deviation %s, fermion number drift %s, final fidelity %s\n", ok ? "PASS" : "FAIL",
                fmt(worst).c_str(), fmt(ndrift).c_str(), fmt(recs.back().fidelity).c_str());
    write_manifest(o.out, c, command,
                   json{{"all_passed", ok},
                        {"max_gauss_deviation", worst},
                        {"fermion_number_drift", ndrift},
                        {"final_fidelity", std::isnan(recs.back().fidelity) ? json(nullptr) : json(recs.back().fidelity)},
                        {"shots", o.shots}}
                       .dump());
    return ok ? 0 : 1;
}

int cmd_trotter_scan(const Common &o, const std::string &command, const std::vector<long> &Ms) {
    SimulationConfig c = resolve(o);
    std::vector<TrotterScanRow> rows = run_trotter_scan(c, Ms);
    std::vector<std::vector<std::string>> out;
    std::vector<double> xs;
    std::vector<double> ys;
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        out.push_back({std::to_string(r.M), fmt(r.distance), fmt(r.phase_aligned), fmt(r.alpha), fmt(r.bound)});
        xs.push_back(static_cast<double>(r.M));
        ys.push_back(r.phase_aligned);
        ok = ok && r.phase_aligned <= r.bound;
        if (i > 0 && r.M > rows[i - 1].M) {
            ok = ok && r.phase_aligned < rows[i - 1].phase_aligned;
        }
    }
    write_csv(path(o, "trotter_scan.csv"), {"M", "distance", "phase_aligned_distance", "alpha", "bound"}, out);
    json extra{{"all_passed", ok}};
    if (rows.size() >= 2) {
        const double slope = loglog_slope(xs, ys);
        extra["slope"] = slope;
        std::printf("slope %s (order %d)\n", fmt(slope).c_str(), c.order);
    }
    std::printf("%s  bound dominance and monotone decrease\n", ok ? "PASS" : "FAIL");
    write_manifest(o.out, c, command, extra.dump());
    return ok ? 0 : 1;
}

int cmd_compile(const Common &o, const std::string &command) {
    SimulationConfig c = resolve(o);
    RegisterLayout L = layout_for(c);
    Schedule s = compile_step(L, couplings_for(c), c.T / c.n_steps, options_for(c));
    const std::string text = dump_schedule(s);
    {
        std::ofstream f(path(o, "schedule.txt"));
        f << text;
    }
    const bool roundtrip = dump_schedule(parse_schedule(L, text)) == text;
    std::size_t non_marker = 0;
    for (const auto &g : s.gates) {
        non_marker += g.is_marker() ? 0 : 1;
    }
    std::printf("%s  %zu gates (%zu markers), %zu checkpoints, dump round trip %s\n", roundtrip ? "PASS" : "FAIL",
                non_marker, s.gates.size() - non_marker, s.checkpoints.size(), roundtrip ? "identical" : "differs");
    write_manifest(o.out, c, command,
                   json{{"all_passed", roundtrip},
                        {"gates", non_marker},
                        {"markers", s.gates.size() - non_marker},
                        {"checkpoints", s.checkpoints.size()}}
                       .dump());
    return roundtrip ? 0 : 1;
}

int cmd_optical(const Common &o, const std::string &command, double xi_min, double xi_max, int points,
                double amplitude) {
    SimulationConfig c = resolve(o);
    std::vector<OpticalScanRow> rows = run_optical_scan(xi_min, xi_max, points);
    std::vector<std::vector<std::string>> pol;
    double worst = 0.0;
    for (const auto &r : rows) {
        pol.push_back({fmt(r.xi), r.valid ? "1" : "0", fmt(r.discriminant), fmt(r.max_dot), fmt(r.alpha1),
                       fmt(r.alpha2), fmt(r.alpha3)});
        if (r.valid) {
            worst = std::max(worst, r.max_dot);
        }
    }
    write_csv(path(o, "polarization.csv"), {"xi", "valid", "discriminant", "max_dot", "alpha1", "alpha2", "alpha3"},
              pol);

    SearchWindow w{-0.5, c.Lx - 0.5, -0.5, c.Ly - 0.5, 0.25};
    PotentialParams standard;
    auto mins = v_mat_minima(standard, w);
    std::vector<std::vector<std::string>> mrows;
    double dev = 0.0;
    for (const auto &m : mins) {
        dev = std::max({dev, std::abs(m(0) - std::round(m(0))), std::abs(m(1) - std::round(m(1)))});
        mrows.push_back({fmt(m(0)), fmt(m(1)), fmt(v_mat(m(0), m(1), standard))});
    }
    write_csv(path(o, "minima.csv"), {"x", "y", "v"}, mrows);

    std::vector<std::vector<std::string>> srows;
    std::vector<std::vector<std::string>> brows;
    for (ShapingStep st : {ShapingStep::eh, ShapingStep::oh, ShapingStep::ev, ShapingStep::ov}) {
        for (const auto &smp : shaping_schedule(st, amplitude, 1.0)) {
            srows.push_back({shaping_step_string(st), fmt(smp.t), fmt(smp.p.f), fmt(smp.p.g), fmt(smp.p.h),
                             fmt(smp.p.phi)});
        }
        const PotentialParams hold = shaping_target(st, amplitude);
        for (const auto &[a, b] : std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>>{
                 {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}, {{0, 1}, {1, 1}}}) {
            brows.push_back({shaping_step_string(st), fmt(a(0)), fmt(a(1)), fmt(b(0)), fmt(b(1)),
                             fmt(barrier_height(standard, a, b)), fmt(barrier_height(hold, a, b))});
        }
    }
    write_csv(path(o, "shaping.csv"), {"step", "t", "f", "g", "h", "phi"}, srows);
    write_csv(path(o, "barriers.csv"), {"step", "x0", "y0", "x1", "y1", "standard", "hold"}, brows);

    const bool count_ok = mins.size() == static_cast<std::size_t>(c.Lx * c.Ly);
    const bool ok = worst < 1e-8 && dev < 1e-6 && count_ok;
    std::printf("%s  polarization max |dot| %s, %zu minima, max site offset %s, validity boundary xi* = %s\n",
                ok ? "PASS" : "FAIL", fmt(worst).c_str(), mins.size(), fmt(dev).c_str(),
                fmt(polarization_validity_boundary()).c_str());
    write_manifest(o.out, c, command,
                   json{{"all_passed", ok},
                        {"max_dot", worst},
                        {"minima", mins.size()},
                        {"validity_boundary", polarization_validity_boundary()}}
                       .dump());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Z_N lattice gauge theory simulator and gate-schedule compiler"};
    app.set_version_flag("--version", std::string(kCodeVersion));
    app.require_subcommand(1);
    Common o;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config, "JSON config (all fields required)")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed, "override the config seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--shots", o.shots, "measurement shots (quench)")->check(CLI::PositiveNumber);
    };
    auto *verify = app.add_subcommand("verify", "run the invariant battery");
    add_common(verify);
    auto *quench = app.add_subcommand("quench", "global-singlet quench with observables and shots");
    add_common(quench);
    auto *scan = app.add_subcommand("trotter-scan", "Trotter error against the exact propagator");
    add_common(scan);
    std::vector<long> Ms = {4, 8, 16, 32, 64};
    scan->add_option("--M", Ms, "step counts")->delimiter(',');
    auto *compile = app.add_subcommand("compile", "dump one Trotter step as a gate schedule");
    add_common(compile);
    auto *optical = app.add_subcommand("optical", "polarization scan, minima, shaping schedules");
    add_common(optical);
    double xi_min = 0.01;
    double xi_max = 0.4;
    int points = 40;
    double amplitude = 0.5;
    optical->add_option("--xi-min", xi_min, "lower end of the xi scan");
    optical->add_option("--xi-max", xi_max, "upper end of the xi scan");
    optical->add_option("--points", points, "scan points")->check(CLI::PositiveNumber);
    optical->add_option("--amplitude", amplitude, "shaping amplitude f0 = g0")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    std::string command;
    for (int i = 1; i < argc; ++i) {
        command += (i > 1 ? " " : "") + std::string(argv[i]);
    }
    try {
        if (*verify) {
            return cmd_verify(o, command);
        }
        if (*quench) {
            return cmd_quench(o, command);
        }
        if (*scan) {
            return cmd_trotter_scan(o, command, Ms);
        }
        if (*compile) {
            return cmd_compile(o, command);
        }
        if (*optical) {
            return cmd_optical(o, command, xi_min, xi_max, points, amplitude);
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
