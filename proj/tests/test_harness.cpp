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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zlgt/harness.hpp"
#include "zlgt/optical.hpp"
#include "zlgt/oracle.hpp"

namespace zlgt {
namespace {

const char *kDefault = R"({"Lx": 2, "Ly": 2, "N": 3, "lambda_E": 1.0, "lambda_B": 1.0, "lambda_GM": 1.0,
  "mass": 1.0, "T": 1.0, "n_steps": 20, "order": 2, "mode": "choreography",
  "ancilla_policy": "per_plaquette", "h_E_variant": "group", "theta": 0.0, "theta_prime": 0.0, "seed": 1})";

TEST(Config, ParsesAndEchoes) {
    SimulationConfig c = parse_config(kDefault);
    EXPECT_EQ(c.Lx, 2);
    EXPECT_EQ(c.mode, CompileMode::choreography);
    SimulationConfig d = parse_config(config_to_json(c));
    EXPECT_EQ(config_to_json(c), config_to_json(d));
}

TEST(Config, FailsClosed) {
    std::string extra = std::string(kDefault);
    extra.insert(1, "\"bogus\": 1, ");
    EXPECT_THROW(parse_config(extra), std::invalid_argument);
    std::string missing = std::string(kDefault);
    missing.replace(missing.find("\"seed\": 1"), 9, "\"order\": 2");
    EXPECT_THROW(parse_config(missing), std::invalid_argument);
    std::string bad_type = std::string(kDefault);
    bad_type.replace(bad_type.find("\"n_steps\": 20"), 13, "\"n_steps\": 2.5");
    EXPECT_THROW(parse_config(bad_type), std::invalid_argument);
    std::string bad_steps = std::string(kDefault);
    bad_steps.replace(bad_steps.find("\"n_steps\": 20"), 13, "\"n_steps\": 0");
    EXPECT_THROW(parse_config(bad_steps), std::invalid_argument);
    EXPECT_THROW(parse_config("[1,2]"), std::invalid_argument);
    EXPECT_THROW(parse_config("{"), std::invalid_argument);
    SimulationConfig c;
    c.lambda_E = std::nan("");
    EXPECT_THROW(validate_config(c), std::invalid_argument);
    c = SimulationConfig{};
    c.order = 3;
    EXPECT_THROW(validate_config(c), std::invalid_argument);
}

TEST(Quench, InteractionsOff) {
    SimulationConfig c;
    c.lambda_E = c.lambda_B = c.lambda_GM = c.mass = 0.0;
    c.n_steps = 3;
    auto recs = run_quench(c);
    ASSERT_EQ(recs.size(), 4u);
    for (const auto &r : recs) {
        EXPECT_LT(max_gauss_deviation(r), 1e-12);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
        EXPECT_NEAR(r.fermion_number, 2.0, 1e-12);
        EXPECT_NEAR(r.flux[0][0], 1.0, 1e-12);
    }
}

TEST(Quench, DefaultRegression) {
    SimulationConfig c;
    auto recs = run_quench(c);
    ASSERT_EQ(recs.size(), 21u);
    for (const auto &r : recs) {
        EXPECT_LT(max_gauss_deviation(r), 1e-8);
        EXPECT_NEAR(r.fermion_number, 2.0, 1e-10);
        EXPECT_NEAR(r.ancilla_overlap, 1.0, 1e-10);
        EXPECT_GT(r.fidelity, 0.9);
    }
}

TEST(Measure, SingletShots) {
    SimulationConfig c;
    RegisterLayout L = layout_for(c);
    auto shots = measure_configuration(build_global_singlet(L), 42, 50);
    for (const auto &s : shots) {
        for (int m : s.links) {
            EXPECT_EQ(m, 0);
        }
        EXPECT_EQ(s.occupations, (std::vector<int>{0, 1, 1, 0}));
    }
    EXPECT_THROW(measure_configuration(build_global_singlet(L), 1, 0), std::invalid_argument);
}

TEST(Measure, SuperpositionStatistics) {
    SimulationConfig c;
    RegisterLayout L = layout_for(c);
    StateVector s = build_global_singlet(L);
    std::vector<std::size_t> tg = {L.link_register({0, 0}, 1)};
    apply_gate(s, make_link_algebra(3).VD.adjoint(), tg);
    const int shots = 3000;
    auto out = measure_configuration(s, 7, shots);
    int counts[3] = {0, 0, 0};
    for (const auto &r : out) {
        counts[r.links[0]]++;
    }
    const double sigma = std::sqrt(shots * (1.0 / 3) * (2.0 / 3));
    for (int n : counts) {
        EXPECT_LT(std::abs(n - shots / 3.0), 4 * sigma);
    }
    auto again = measure_configuration(s, 7, shots);
    for (int i = 0; i < shots; ++i) {
        EXPECT_EQ(out[static_cast<std::size_t>(i)].links, again[static_cast<std::size_t>(i)].links);
    }
}

TEST(Scan, MonotoneTrotterColumn) {
    SimulationConfig c;
    c.order = 1;
    c.mode = CompileMode::direct;
    auto rows = run_trotter_scan(c, {4, 8, 16});
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].phase_aligned, rows[i - 1].phase_aligned);
        EXPECT_LT(rows[i].distance, rows[i - 1].distance);
    }
    for (const auto &r : rows) {
        EXPECT_LE(r.phase_aligned, r.distance + 1e-9);
        EXPECT_LE(r.phase_aligned, r.bound);
    }
}

TEST(Scan, LogLogSlope) {
    std::vector<double> x = {1, 2, 4, 8};
    std::vector<double> y = {3, 0.75, 0.1875, 0.046875};
    EXPECT_NEAR(loglog_slope(x, y), -2.0, 1e-12);
    EXPECT_ANY_THROW(loglog_slope({1}, {1}));
}

TEST(Scan, OpticalRows) {
    auto rows = run_optical_scan(0.01, 0.5, 50);
    ASSERT_EQ(rows.size(), 50u);
    const double xb = polarization_validity_boundary();
    for (const auto &r : rows) {
        EXPECT_EQ(r.valid, r.xi < xb);
        if (r.valid) {
            EXPECT_LT(r.max_dot, 1e-8);
        }
    }
}

TEST(Output, CsvAndManifest) {
    auto dir = std::filesystem::temp_directory_path() / "zlgt_test_output";
    std::filesystem::create_directories(dir);
    write_csv((dir / "a.csv").string(), {"x", "y"}, {{format_number(1.0 / 3), "2"}});
    std::ifstream in(dir / "a.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "x,y\n0.333333333333,2\n");
    EXPECT_ANY_THROW(write_csv((dir / "b.csv").string(), {"x"}, {{"1", "2"}}));
    write_manifest(dir.string(), SimulationConfig{}, "verify", R"({"k": 1})");
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
}

}  // namespace
}  // namespace zlgt
