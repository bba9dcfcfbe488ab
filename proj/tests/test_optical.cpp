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
#include <numbers>

#include "zlgt/optical.hpp"

namespace zlgt {
namespace {

using std::numbers::pi;

TEST(Potential, StandardMinimaOnSites) {
    auto mins = v_mat_minima(PotentialParams{}, SearchWindow{});
    ASSERT_EQ(mins.size(), 4u);
    const double expect[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(mins[static_cast<std::size_t>(i)](0), expect[i][0], 1e-6);
        EXPECT_NEAR(mins[static_cast<std::size_t>(i)](1), expect[i][1], 1e-6);
    }
    auto big = v_mat_minima(PotentialParams{}, SearchWindow{-0.5, 3.5, -0.5, 2.5, 0.25});
    EXPECT_EQ(big.size(), 12u);
}

TEST(Potential, GradientMatchesFiniteDifference) {
    PotentialParams p{0.4, 0.2, 0.1, 0.3};
    const double h = 1e-6;
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.1, 0.2}, {0.7, -0.3}, {1.3, 0.9}}) {
        Eigen::Vector2d g = v_mat_gradient(x, y, p);
        EXPECT_NEAR(g(0), (v_mat(x + h, y, p) - v_mat(x - h, y, p)) / (2 * h), 1e-7);
        EXPECT_NEAR(g(1), (v_mat(x, y + h, p) - v_mat(x, y - h, p)) / (2 * h), 1e-7);
        Eigen::Matrix2d H = v_mat_hessian(x, y, p);
        Eigen::Vector2d gx = (v_mat_gradient(x + h, y, p) - v_mat_gradient(x - h, y, p)) / (2 * h);
        EXPECT_NEAR(H(0, 0), gx(0), 1e-6);
        EXPECT_NEAR(H(1, 0), gx(1), 1e-6);
    }
    EXPECT_ANY_THROW(v_mat(0, 0, PotentialParams{-1.0, 0, 0, 0}));
}

TEST(Potential, MassStaggering) {
    PotentialParams p{0, 0, 0.3, 0};
    auto mins = v_mat_minima(p, SearchWindow{});
    ASSERT_EQ(mins.size(), 4u);
    double even = 0.0;
    double odd = 0.0;
    for (const auto &m : mins) {
        const int s = static_cast<int>(std::lround(m(0) + m(1)));
        (s % 2 == 0 ? even : odd) = v_mat(m(0), m(1), p);
    }
    EXPECT_GT(even - odd, 1e-3);
}

TEST(Potential, ShapingLowersEvenHorizontalBarrier) {
    PotentialParams standard;
    PotentialParams eh{2.0, 0, 0, pi / 4};
    Eigen::Vector2d a(0, 0);
    Eigen::Vector2d b(1, 0);
    EXPECT_LT(barrier_height(eh, a, b), barrier_height(standard, a, b));
}

TEST(Polarization, OrthogonalAtSmallXi) {
    PolarizationTriad t = polarization_vectors(0.1);
    ASSERT_TRUE(t.valid);
    EXPECT_LT(std::abs(t.e[0].dot(t.e[1])), 1e-10);
    EXPECT_LT(std::abs(t.e[0].dot(t.e[2])), 1e-10);
    EXPECT_LT(std::abs(t.e[1].dot(t.e[2])), 1e-10);
    EXPECT_NEAR(t.zeta * t.zeta, 0.1 * 0.1 + 0.5, 1e-15);
}

TEST(Polarization, TransverseToWaveVectors) {
    const double xi = 0.2;
    PolarizationTriad t = polarization_vectors(xi);
    ASSERT_TRUE(t.valid);
    Eigen::Vector3d k1(1, 0, xi);
    Eigen::Vector3d k2(0, 1, xi);
    Eigen::Vector3d k3(0.5, 0.5, t.zeta);
    EXPECT_LT(std::abs(t.e[0].dot(k1)), 1e-12);
    EXPECT_LT(std::abs(t.e[1].dot(k2)), 1e-12);
    EXPECT_LT(std::abs(t.e[2].dot(k3)), 1e-12);
}

TEST(Polarization, ValidityBoundaryFlips) {
    const double xb = polarization_validity_boundary();
    auto D = [](double xi) { return 1 - 4 * std::pow(xi, 4) - 2 * xi * std::sqrt(2 + 4 * xi * xi); };
    EXPECT_NEAR(D(xb), 0.0, 1e-12);
    EXPECT_TRUE(polarization_vectors(xb - 1e-6).valid);
    EXPECT_FALSE(polarization_vectors(xb + 1e-6).valid);
    EXPECT_FALSE(polarization_vectors(0.0).valid);
}

TEST(OpticalConfig, WavelengthConstraint) {
    EXPECT_NO_THROW((OpticalConfig{1.0, 2.0}.validate()));
    EXPECT_ANY_THROW((OpticalConfig{0.5, 2.0}.validate()));
    EXPECT_ANY_THROW((OpticalConfig{1.0, 0.0}.validate()));
}

TEST(Shaping, Schedules) {
    auto eh = shaping_schedule(ShapingStep::eh, 0.5, 2.0);
    EXPECT_EQ(eh.front().p.f, 0.0);
    EXPECT_NEAR(eh.back().p.f, 0.0, 1e-15);
    EXPECT_NEAR(eh.back().p.phi, 0.0, 1e-15);
    auto ov = shaping_schedule(ShapingStep::ov, 0.7, 1.0);
    const auto &mid = ov[ov.size() / 2].p;
    EXPECT_DOUBLE_EQ(mid.g, 0.7);
    EXPECT_DOUBLE_EQ(mid.phi, -pi / 4);
    EXPECT_EQ(mid.f, 0.0);
    EXPECT_EQ(mid.h, 0.0);
    const ShapingStep all[4] = {ShapingStep::eh, ShapingStep::oh, ShapingStep::ev, ShapingStep::ov};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(parse_shaping_step(shaping_step_string(all[i])), all[i]);
        for (int j = i + 1; j < 4; ++j) {
            PotentialParams a = shaping_target(all[i], 1.0);
            PotentialParams b = shaping_target(all[j], 1.0);
            EXPECT_TRUE(a.f != b.f || a.g != b.g || a.phi != b.phi);
        }
    }
    EXPECT_ANY_THROW(shaping_schedule(ShapingStep::eh, -1.0, 1.0));
}

}  // namespace
}  // namespace zlgt
