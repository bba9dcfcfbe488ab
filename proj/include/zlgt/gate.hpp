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

#ifndef ZLGT_GATE_HPP_
#define ZLGT_GATE_HPP_

#include <string>
#include <vector>

#include "zlgt/lattice.hpp"

namespace zlgt {

/// One primitive unitary.  The matrix is fully determined by (name, targets, params)
/// and the register dimensions, so a schedule dump can be re-parsed into gates.
///
/// Names and targets (first target least significant):
///   entangler, entangler_dag            (link, ancilla)      sum_m Q^m (x) |m~><m~|
///   collision, collision_dag            (link, ancilla)      exp(-i 2pi/3 Fz Fz~), N = 3
///   link_fourier, link_fourier_dag      (link)               V_D
///   ancilla_fourier, ancilla_fourier_dag (ancilla)
///   ancilla_flip                        (ancilla)            m -> -m mod N
///   fermion_ancilla_collision[_dag]     (fermion, ancilla)   exp(n log P~)
///   spurious_phase                      (fermion)            exp(-i theta n); params {theta}
///   gauge_matter_coupling[_dag]         (link, fermion)      exp(log Q n)
///   hop                                 (fermions origin..end) exp(-i phi (c+_o c_e + h.c.)); params {phi}
///   control_field                       (ancilla)            exp(-i tau lambda_B (Q~ + Q~^dag)); params {tau, lambda_B}
///   electric                            (link)               params {tau, lambda_E, variant}
///   mass                                (fermion)            exp(-i tau mass sign n); params {tau, mass, sign}
///   start, idle, move_right, move_back  ()                   no-op stage markers
struct GateOp {
    std::string name;
    std::vector<std::size_t> targets;
    std::vector<double> params;
    int stage = 0;
    Eigen::MatrixXcd matrix;

    bool is_marker() const { return targets.empty(); }
};

/// Builds the gate matrix from its description.  Throws on unknown names or bad arity.
GateOp make_gate(const RegisterLayout &layout, const std::string &name, std::vector<std::size_t> targets,
                 std::vector<double> params = {}, int stage = 0);

GateOp make_marker(const std::string &label, int stage);

/// Name of the inverse gate; the parameters of parametrized gates are negated where needed.
GateOp adjoint_gate(const RegisterLayout &layout, const GateOp &g);

}  // namespace zlgt

#endif  // ZLGT_GATE_HPP_
