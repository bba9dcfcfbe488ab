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

#ifndef ZLGT_SCHEDULE_HPP_
#define ZLGT_SCHEDULE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "zlgt/algebra.hpp"
#include "zlgt/gate.hpp"

namespace zlgt {

enum class CompileMode { direct, choreography };

std::string compile_mode_string(CompileMode m);
CompileMode parse_compile_mode(const std::string &s);

struct CompileOptions {
    CompileMode mode = CompileMode::choreography;
    int order = 1;
    /// Spurious fermion phases of the collision-mediated gauge-matter route (choreography only).
    double theta = 0.0;
    double theta_prime = 0.0;
};

struct Schedule {
    std::vector<GateOp> gates;
    CompileMode mode = CompileMode::choreography;
    int order = 1;
    double tau = 0.0;
    double theta = 0.0;
    double theta_prime = 0.0;
    /// Gate counts at which every ancilla is back in |in~> for any input.  The last entry is gates.size().
    std::vector<std::size_t> checkpoints;
};

/// One Trotter step.  Order 1 applies ev, eh, Be, ov, oh, Bo, M, E; order 2 runs the
/// first six at tau/2, M and E at tau, then the first six in reverse order at tau/2.
///
/// Choreography mode labels every gate with the stage 1..35 of the Z_3 protocol.
/// Direct mode labels gates with the sub-step position 1..8.
Schedule compile_step(const RegisterLayout &layout, const Couplings &couplings, double tau,
                      const CompileOptions &options);

/// Reversed schedule of adjoint gates.
Schedule adjoint_schedule(const RegisterLayout &layout, const Schedule &s);

/// Applies gates [begin, end) to a batch of column states on layout.
void apply_gates(const RegisterLayout &layout, const std::vector<GateOp> &gates, std::size_t begin, std::size_t end,
                 Eigen::Ref<Eigen::MatrixXcd> states);

void execute(const Schedule &schedule, StateVector &state);

/// Map on the physical registers: ancillas prepared in |in~> and projected back onto it.
Eigen::MatrixXcd physical_map(const RegisterLayout &layout, const Schedule &schedule);
/// Physical maps of the consecutive checkpoint segments.
std::vector<Eigen::MatrixXcd> segment_maps(const RegisterLayout &layout, const Schedule &schedule);

/// Evolves n_steps steps of T/n_steps.  The observer sees the state after every step (step = 1..n_steps).
StateVector trotter_evolve(const RegisterLayout &layout, const Couplings &couplings, double T, int n_steps,
                           const CompileOptions &options, const StateVector &initial,
                           const std::function<void(int, const StateVector &)> &observer = {});

/// Phase theta(x,k) per link (indexed as geometry.links()) picked up by the twisted hopping
/// psi^dag(x) Q psi(x+k) after the spurious phases are pushed through the whole gauge-matter product.
std::vector<double> spurious_phase_field(const LatticeGeometry &geometry, double theta, double theta_prime);
/// Uniform phase left over on the fermion number after the pushing: exp(-i central N_f).
double spurious_central_phase(double theta, double theta_prime);
/// Lattice curl per plaquette (indexed as geometry.plaquettes()).
std::vector<double> plaquette_curl(const LatticeGeometry &geometry, const std::vector<double> &field);
/// Lambda with field(x,k) = Lambda(x+k) - Lambda(x), Lambda(0,0) = 0.  Throws when the curl is not zero.
std::vector<double> solve_vertex_potential(const LatticeGeometry &geometry, const std::vector<double> &field);
/// Diagonal of G_Lambda = exp(i sum_x Lambda(x) n(x)) over the layout basis.
Eigen::VectorXcd gauge_away_phases(const RegisterLayout &layout, const std::vector<double> &Lambda);

/// Line format: stage<TAB>name<TAB>targets<TAB>params, preceded by one '#' metadata line.
std::string dump_schedule(const Schedule &s);
Schedule parse_schedule(const RegisterLayout &layout, const std::string &text);

}  // namespace zlgt

#endif  // ZLGT_SCHEDULE_HPP_
