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

#include "zlgt/optical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zlgt {

using std::numbers::pi;

namespace {

struct Coeffs {
    double a, b, c;
};

Coeffs coefficients(const PotentialParams &p) {
    const double d1 = 1.0 + p.f + p.h;
    const double d2 = 1.0 + p.g + p.h;
    const double d3 = 1.0 + p.f + p.g + p.h;
    if (d1 <= 0.0 || d2 <= 0.0 || d3 <= 0.0) {
        throw std::invalid_argument("degenerate potential denominators");
    }
    return {1.0 / d1, 1.0 / d2, (p.f + p.g + p.h) / d3};
}

}  // namespace

double v_mat(double x, double y, const PotentialParams &p) {
    Coeffs k = coefficients(p);
    const double sx = std::sin(pi * x);
    const double sy = std::sin(pi * y);
    const double cu = std::cos(0.5 * pi * (x + y) + p.phi);
    return k.a * sx * sx + k.b * sy * sy + k.c * cu * cu;
}

Eigen::Vector2d v_mat_gradient(double x, double y, const PotentialParams &p) {
    Coeffs k = coefficients(p);
    const double u = 0.5 * pi * (x + y) + p.phi;
    const double t = -k.c * 0.5 * pi * std::sin(2.0 * u);
    return {k.a * pi * std::sin(2.0 * pi * x) + t, k.b * pi * std::sin(2.0 * pi * y) + t};
}

Eigen::Matrix2d v_mat_hessian(double x, double y, const PotentialParams &p) {
    Coeffs k = coefficients(p);
    const double u = 0.5 * pi * (x + y) + p.phi;
    const double t = -k.c * 0.5 * pi * pi * std::cos(2.0 * u);
    Eigen::Matrix2d H;
    H << 2.0 * k.a * pi * pi * std::cos(2.0 * pi * x) + t, t, t, 2.0 * k.b * pi * pi * std::cos(2.0 * pi * y) + t;
    return H;
}

namespace {

// Descent with Newton steps where the Hessian is positive definite, gradient steps otherwise.
bool descend(Eigen::Vector2d &x, const PotentialParams &p) {
    for (int it = 0; it < 500; ++it) {
        Eigen::Vector2d g = v_mat_gradient(x(0), x(1), p);
        if (g.norm() < 1e-13) {
            return true;
        }
        Eigen::Matrix2d H = v_mat_hessian(x(0), x(1), p);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
        Eigen::Vector2d dir;
        if (es.eigenvalues().minCoeff() > 1e-10) {
            dir = -H.ldlt().solve(g);
        } else {
            dir = -g / (2.0 * pi * pi);
        }
        double step = 1.0;
        const double v0 = v_mat(x(0), x(1), p);
        while (step > 1e-12) {
            Eigen::Vector2d trial = x + step * dir;
            if (v_mat(trial(0), trial(1), p) <= v0 + 1e-4 * step * g.dot(dir)) {
                x = trial;
                break;
            }
            step *= 0.5;
        }
        if (step <= 1e-12) {
            return g.norm() < 1e-9;
        }
    }
    return v_mat_gradient(x(0), x(1), p).norm() < 1e-9;
}

}  // namespace

std::vector<Eigen::Vector2d> v_mat_minima(const PotentialParams &p, const SearchWindow &w) {
    coefficients(p);
    if (w.grid_step <= 0.0 || w.xmax < w.xmin || w.ymax < w.ymin) {
        throw std::invalid_argument("bad search window");
    }
    const double tol = 1e-9;
    std::vector<Eigen::Vector2d> found;
    const int nx = static_cast<int>(std::floor((w.xmax - w.xmin) / w.grid_step + 1e-9)) + 1;
    const int ny = static_cast<int>(std::floor((w.ymax - w.ymin) / w.grid_step + 1e-9)) + 1;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            Eigen::Vector2d x(w.xmin + i * w.grid_step, w.ymin + j * w.grid_step);
            if (!descend(x, p)) {
                continue;
            }
            if (x(0) < w.xmin - tol || x(0) > w.xmax + tol || x(1) < w.ymin - tol || x(1) > w.ymax + tol) {
                continue;
            }
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v_mat_hessian(x(0), x(1), p));
            if (es.eigenvalues().minCoeff() <= 0.0) {
                continue;
            }
            bool dup = false;
            for (const auto &f : found) {
                if ((f - x).norm() < 1e-6) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                found.push_back(x);
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const Eigen::Vector2d &a, const Eigen::Vector2d &b) {
        if (std::abs(a(1) - b(1)) > 1e-6) {
            return a(1) < b(1);
        }
        return a(0) < b(0);
    });
    return found;
}

double barrier_height(const PotentialParams &p, const Eigen::Vector2d &a, const Eigen::Vector2d &b, int samples) {
    if (samples < 2) {
        throw std::invalid_argument("need at least two samples");
    }
    double vmax = -1e300;
    for (int i = 0; i < samples; ++i) {
        double s = static_cast<double>(i) / (samples - 1);
        Eigen::Vector2d x = (1.0 - s) * a + s * b;
        vmax = std::max(vmax, v_mat(x(0), x(1), p));
    }
    return vmax - std::min(v_mat(a(0), a(1), p), v_mat(b(0), b(1), p));
}

PolarizationTriad polarization_vectors(double xi) {
    PolarizationTriad t;
    const double r = std::sqrt(2.0 + 4.0 * xi * xi);
    t.zeta = std::sqrt(xi * xi + 0.5);
    t.discriminant = 1.0 - 4.0 * std::pow(xi, 4) - 2.0 * xi * r;
    t.valid = t.discriminant > 0.0 && xi != 0.0;
    for (auto &e : t.e) {
        e.setZero();
    }
    if (!t.valid) {
        return t;
    }
    const double sq = std::sqrt(t.discriminant);
    t.alpha1 = (1.0 - sq) / (2.0 * xi);
    t.alpha2 = (1.0 + sq) / (2.0 * xi);
    t.alpha3 = (-1.0 - 2.0 * xi * xi + sq) / r;
    t.e[0] = Eigen::Vector3d(-xi, t.alpha1, 1.0).normalized();
    t.e[1] = Eigen::Vector3d(t.alpha2, -xi, 1.0).normalized();
    t.e[2] = Eigen::Vector3d(t.alpha3, -t.alpha3 - 2.0 * t.zeta, 1.0).normalized();
    return t;
}

double polarization_validity_boundary() {
    auto D = [](double xi) { return 1.0 - 4.0 * std::pow(xi, 4) - 2.0 * xi * std::sqrt(2.0 + 4.0 * xi * xi); };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (D(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

void OpticalConfig::validate() const {
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
    if (!(spacing > wavelength / (2.0 * std::sqrt(2.0)))) {
        throw std::invalid_argument("lattice spacing must exceed wavelength / (2 sqrt 2)");
    }
}

std::string shaping_step_string(ShapingStep s) {
    switch (s) {
        case ShapingStep::eh: return "eh";
        case ShapingStep::oh: return "oh";
        case ShapingStep::ev: return "ev";
        case ShapingStep::ov: return "ov";
    }
    return "?";
}

ShapingStep parse_shaping_step(const std::string &s) {
    for (ShapingStep st : {ShapingStep::eh, ShapingStep::oh, ShapingStep::ev, ShapingStep::ov}) {
        if (shaping_step_string(st) == s) {
            return st;
        }
    }
    throw std::invalid_argument("unknown shaping step: " + s);
}

PotentialParams shaping_target(ShapingStep step, double amplitude) {
    if (!(amplitude > 0.0)) {
        throw std::invalid_argument("shaping amplitude must be positive");
    }
    PotentialParams p;
    const bool horizontal = step == ShapingStep::eh || step == ShapingStep::oh;
    const bool even = step == ShapingStep::eh || step == ShapingStep::ev;
    (horizontal ? p.f : p.g) = amplitude;
    p.phi = even ? pi / 4.0 : -pi / 4.0;
    return p;
}

std::vector<ShapingSample> shaping_schedule(ShapingStep step, double amplitude, double duration, int samples,
                                            double ramp_fraction) {
    if (!(duration > 0.0) || samples < 2 || !(ramp_fraction > 0.0 && ramp_fraction <= 0.5)) {
        throw std::invalid_argument("bad shaping schedule parameters");
    }
    const PotentialParams target = shaping_target(step, amplitude);
    const double tr = ramp_fraction * duration;
    std::vector<ShapingSample> out;
    for (int i = 0; i < samples; ++i) {
        const double t = duration * i / (samples - 1);
        double s = 1.0;
        if (t < tr) {
            s = 0.5 * (1.0 - std::cos(pi * t / tr));
        } else if (t > duration - tr) {
            s = 0.5 * (1.0 - std::cos(pi * (duration - t) / tr));
        }
        ShapingSample smp;
        smp.t = t;
        smp.p = {s * target.f, s * target.g, s * target.h, s * target.phi};
        out.push_back(smp);
    }
    return out;
}

}  // namespace zlgt
