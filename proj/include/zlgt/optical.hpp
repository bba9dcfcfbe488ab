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

#ifndef ZLGT_OPTICAL_HPP_
#define ZLGT_OPTICAL_HPP_

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace zlgt {

/// Shaping functions of the matter potential; all zero is the standard configuration.
struct PotentialParams {
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;
    double phi = 0.0;
};

/// V(x,y) = sin^2(pi x)/(1+f+h) + sin^2(pi y)/(1+g+h)
///        + (f+g+h)/(1+f+g+h) cos^2(pi (x+y)/2 + phi), unit prefactor.
/// Throws when a denominator is not positive.
double v_mat(double x, double y, const PotentialParams &p);
Eigen::Vector2d v_mat_gradient(double x, double y, const PotentialParams &p);
Eigen::Matrix2d v_mat_hessian(double x, double y, const PotentialParams &p);

struct SearchWindow {
    double xmin = -0.5;
    double xmax = 1.5;
    double ymin = -0.5;
    double ymax = 1.5;
    double grid_step = 0.25;
};

/// Local minima inside the window: descent from every grid point, Newton refinement,
/// duplicates within 1e-6 merged.  Sorted by (y, x).
std::vector<Eigen::Vector2d> v_mat_minima(const PotentialParams &p, const SearchWindow &window);

/// Highest potential along the straight segment a-b minus the lower endpoint value.
double barrier_height(const PotentialParams &p, const Eigen::Vector2d &a, const Eigen::Vector2d &b,
                      int samples = 4001);

struct PolarizationTriad {
    std::array<Eigen::Vector3d, 3> e;  // normalized
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double zeta = 0.0;          // sqrt(xi^2 + 1/2)
    double discriminant = 0.0;  // 1 - 4 xi^4 - 2 xi sqrt(2 + 4 xi^2)
    bool valid = false;         // discriminant > 0 and xi != 0
};

/// Polarizations of the three standing waves with k1 = pi(1,0,xi), k2 = pi(0,1,xi),
/// k3 = pi(1/2,1/2,zeta).  e1 ~ (-xi, a1, 1), e2 ~ (a2, -xi, 1), e3 ~ (a3, -a3 - 2 zeta, 1).
/// When the discriminant is not positive the vectors are left zero and valid is false.
PolarizationTriad polarization_vectors(double xi);

/// Positive root of the discriminant.
double polarization_validity_boundary();

/// Lattice spacing and laser wavelength of the matter trap.
struct OpticalConfig {
    double spacing = 1.0;
    double wavelength = 1.0;
    /// Throws unless spacing > wavelength / (2 sqrt 2).
    void validate() const;
};

enum class ShapingStep { eh, oh, ev, ov };
std::string shaping_step_string(ShapingStep s);
ShapingStep parse_shaping_step(const std::string &s);

/// Hold configuration: eh (f0, pi/4), oh (f0, -pi/4), ev (g0, pi/4), ov (g0, -pi/4).
PotentialParams shaping_target(ShapingStep step, double amplitude);

struct ShapingSample {
    double t = 0.0;
    PotentialParams p;
};
/// Raised-cosine ramp over ramp_fraction of the duration, hold, and the mirrored ramp back.
std::vector<ShapingSample> shaping_schedule(ShapingStep step, double amplitude, double duration, int samples = 101,
                                            double ramp_fraction = 0.25);

}  // namespace zlgt

#endif  // ZLGT_OPTICAL_HPP_
