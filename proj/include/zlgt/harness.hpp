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

#ifndef ZLGT_HARNESS_HPP_
#define ZLGT_HARNESS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zlgt/algebra.hpp"
#include "zlgt/schedule.hpp"

namespace zlgt {

inline constexpr const char *kCodeVersion = "zlgt 1.0.0";

struct SimulationConfig {
    int Lx = 2;
    int Ly = 2;
    int N = 3;
    double lambda_E = 1.0;
    double lambda_B = 1.0;
    double lambda_GM = 1.0;
    double mass = 1.0;
    double T = 1.0;
    int n_steps = 20;
    int order = 2;
    CompileMode mode = CompileMode::choreography;
    AncillaPolicy ancilla_policy = AncillaPolicy::per_plaquette;
    ElectricVariant h_E_variant = ElectricVariant::group;
    double theta = 0.0;
    double theta_prime = 0.0;
    std::uint64_t seed = 1;
};

/// Strict JSON: every field required, unknown keys rejected.  Throws std::invalid_argument.
SimulationConfig parse_config(const std::string &json_text);
SimulationConfig load_config(const std::string &path);
std::string config_to_json(const SimulationConfig &c);
/// Throws std::invalid_argument naming the offending field.
void validate_config(const SimulationConfig &c);

std::string ancilla_policy_string(AncillaPolicy p);
AncillaPolicy parse_ancilla_policy(const std::string &s);
std::string electric_variant_string(ElectricVariant v);
ElectricVariant parse_electric_variant(const std::string &s);

RegisterLayout layout_for(const SimulationConfig &c);
Couplings couplings_for(const SimulationConfig &c);
CompileOptions options_for(const SimulationConfig &c);

/// <Theta(x)> per vertex in geometry order.
std::vector<cplx> gauss_expectations(const StateVector &state);
double fermion_number(const StateVector &state);
/// P(link label = m) per link in geometry order.
std::vector<std::vector<double>> flux_probabilities(const StateVector &state);

struct QuenchRecord {
    int step = 0;
    double t = 0.0;
    std::vector<cplx> gauss;
    double fermion_number = 0.0;
    std::vector<std::vector<double>> flux;
    /// |<exact|projected>|; NaN when the physical dimension is beyond the dense oracle.
    double fidelity = 0.0;
    /// Norm of the state with every ancilla projected on |in~>.
    double ancilla_overlap = 0.0;
};

/// Global singlet evolved for n_steps steps; record 0 is the initial state.
std::vector<QuenchRecord> run_quench(const SimulationConfig &c);

double max_gauss_deviation(const QuenchRecord &r);

/// Random normalized physical vector supported on basis states with Theta(x) = 1 at every vertex.
Eigen::VectorXcd random_gauge_invariant_state(const RegisterLayout &physical_layout, std::mt19937_64 &rng);
/// Random normalized physical vector with a fixed total fermion number.
Eigen::VectorXcd random_fixed_number_state(const RegisterLayout &physical_layout, int number, std::mt19937_64 &rng);

/// Fidelity with the exact evolution after M steps of T/M from the global singlet.  The step is
/// applied as its physical map (ancillas are restored by every step).  Needs the dense oracle.
double quench_fidelity(const SimulationConfig &c, long M);

struct Shot {
    std::vector<int> links;
    std::vector<int> occupations;
};
/// Born-rule samples in the (link label, occupation) basis, ancillas traced out.
std::vector<Shot> measure_configuration(const StateVector &state, std::uint64_t seed, int shots);

struct CheckResult {
    std::string property;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};
std::vector<CheckResult> run_verification_suite(const SimulationConfig &c);

struct TrotterScanRow {
    long M = 0;
    double distance = 0.0;
    double phase_aligned = 0.0;
    double alpha = 0.0;
    double bound = 0.0;
};
/// One-step map raised to M against exp(-iHT) on the physical registers.
std::vector<TrotterScanRow> run_trotter_scan(const SimulationConfig &c, const std::vector<long> &Ms);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

struct OpticalScanRow {
    double xi = 0.0;
    bool valid = false;
    double discriminant = 0.0;
    double max_dot = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
};
std::vector<OpticalScanRow> run_optical_scan(double xi_min, double xi_max, int points);

/// "%.12g".
std::string format_number(double x);
void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows);
/// Config echo, code version, seed and any extra fields.
void write_manifest(const std::string &dir, const SimulationConfig &c, const std::string &command,
                    const std::string &extra_json = "{}");

}  // namespace zlgt

#endif  // ZLGT_HARNESS_HPP_
