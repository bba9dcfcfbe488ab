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

#ifndef ZLGT_STATOR_HPP_
#define ZLGT_STATOR_HPP_

#include <vector>

#include "zlgt/algebra.hpp"
#include "zlgt/gate.hpp"

namespace zlgt {

enum class Direction { forward, inverse };

// Two-register matrices below use the link (or fermion) as the least significant
// factor and the ancilla as the most significant one.

/// sum_m Q^m (x) |m~><m~| or its adjoint.
Eigen::MatrixXcd stator_entangler(const LinkAlgebra &alg, Direction direction);

/// Stator as an isometry N -> N^2: S = U (1 (x) |in~>).
Eigen::MatrixXcd stator_isometry(const LinkAlgebra &alg);

/// |in~> = N^{-1/2} sum_m |m~>.
Eigen::VectorXcd ancilla_in_state(int N);

/// exp(-i (2pi/3) Fz (x) Fz~).  N = 3 only.
Eigen::MatrixXcd z3_collision_entangler();

/// m -> -m mod N on one register.
Eigen::MatrixXcd ancilla_flip(int N);
/// V_D acting on the ancilla.
Eigen::MatrixXcd ancilla_fourier(const LinkAlgebra &alg);

/// exp(-i tau lambda_B (Q~ + Q~^dag)).
Eigen::MatrixXcd control_field_rotation(const LinkAlgebra &alg, double tau, double lambda_B);

/// Spin-spin collision couplings of the two spin-1 atoms.
struct CollisionCouplings {
    double g0 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
};

/// sum_j g_j (F.F~)^j on the 9-dimensional pair space.
Eigen::MatrixXcd collision_generator(const CollisionCouplings &g);
/// exp(-i alpha sum_j g_j (F.F~)^j).
Eigen::MatrixXcd collision_unitary(const CollisionCouplings &g, double alpha);

/// Keeps only the part of a pair generator that preserves both m_F and m~_F.
Eigen::MatrixXcd rwa_project(const Eigen::MatrixXcd &generator);
/// exp(-i alpha rwa_project(G)).
Eigen::MatrixXcd rwa_collision_unitary(const CollisionCouplings &g, double alpha);

/// Coefficients of the diagonal generator
///   eta0 + eta1 Fz Fz~ + eta2 N0 N0~ + eta3 (N0 + N0~).
struct EtaCoefficients {
    double eta0 = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
};

/// The closed-form coefficients as printed: eta0 = g0 + 3g2/2, eta1 = g1 - g2/2, eta2 = 3g2, eta3 = 0.
EtaCoefficients eta_printed(const CollisionCouplings &g);
/// Coefficients of the exact block-diagonal projection (least-squares fit on the diagonal).
EtaCoefficients eta_exact(const CollisionCouplings &g);

/// exp(-i alpha (eta0 + eta1 Fz Fz~ + eta2 N0 N0~ + eta3 (N0 + N0~))).
Eigen::MatrixXcd eta_unitary(const EtaCoefficients &eta, double alpha);

/// Composition with alpha = 2pi/(3 eta1) followed by the compensating exp(-i beta N0 N0~),
/// beta = 2pi(kappa - eta2/(3 eta1)), kappa = floor(eta2/(3 eta1)) + 1, and, when
/// compensate_single is set, the local phases exp(+i alpha eta3 (N0 + N0~)).
/// Throws when eta1 = 0.
struct CollisionComposition {
    double alpha = 0.0;
    double beta = 0.0;
    int kappa = 0;
    Eigen::MatrixXcd unitary;
};
CollisionComposition compose_z3_entangler(const EtaCoefficients &eta, bool compensate_single);

/// U1 U2 U3^dag U4^dag around a plaquette (gates listed in application order).
/// The inverse direction lists the adjoints in reverse order.
std::vector<GateOp> plaquette_stator_sequence(const RegisterLayout &layout, Vertex plaquette, Direction direction);

/// Gates of a gauge-matter link.
struct GaugeMatterBundle {
    Link link;
    /// exp(log Q(x,k) n(x)) on (link, fermion at origin).
    LocalOperator U_W;
    /// exp(n(x) log P~) on (fermion, ancilla), as a bare two-register matrix.
    Eigen::MatrixXcd U_W_tilde_dag;
    /// exp(-i theta n(x)) and exp(-i theta' n(x)).
    Eigen::MatrixXcd V_theta;
    Eigen::MatrixXcd V_theta_prime;
    /// psi^dag(x) psi(x+k) + h.c., unit coupling.
    LocalOperator tunneling;
    double theta = 0.0;
    double theta_prime = 0.0;
    /// Channel couplings of the fermion-ancilla collision; metadata only.
    double g0_prime = 0.0;
    double g1_prime = 0.0;
};
GaugeMatterBundle gauge_matter_gates(const RegisterLayout &layout, const Link &link, double theta,
                                     double theta_prime);

}  // namespace zlgt

#endif  // ZLGT_STATOR_HPP_
